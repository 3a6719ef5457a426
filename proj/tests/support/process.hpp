#pragma once

#include <csignal>
#include <stdexcept>
#include <string>
#include <vector>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace glex::testing {

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

// Child process with piped stdout/stderr, started in a given directory.
class Process {
 public:
  Process(const std::vector<std::string>& argv, const std::string& cwd) {
    int out[2], err[2];
    if (pipe(out) != 0 || pipe(err) != 0) throw std::runtime_error("pipe failed");
    pid_ = fork();
    if (pid_ < 0) throw std::runtime_error("fork failed");
    if (pid_ == 0) {
      if (chdir(cwd.c_str()) != 0) _exit(127);
      dup2(out[1], STDOUT_FILENO);
      dup2(err[1], STDERR_FILENO);
      close(out[0]);
      close(out[1]);
      close(err[0]);
      close(err[1]);
      std::vector<char*> args;
      for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
      args.push_back(nullptr);
      execv(args[0], args.data());
      _exit(127);
    }
    close(out[1]);
    close(err[1]);
    out_fd_ = out[0];
    err_fd_ = err[0];
  }

  ~Process() {
    if (pid_ > 0) {
      kill(pid_, SIGKILL);
      waitpid(pid_, nullptr, 0);
    }
    if (out_fd_ >= 0) close(out_fd_);
    if (err_fd_ >= 0) close(err_fd_);
  }

  Process(const Process&) = delete;
  Process& operator=(const Process&) = delete;

  // Reads stderr until a line containing `needle` appears; returns that line.
  std::string wait_for_stderr_line(const std::string& needle, int timeout_ms = 10000) {
    while (true) {
      auto nl = err_.find('\n', scanned_);
      while (nl != std::string::npos) {
        std::string line = err_.substr(scanned_, nl - scanned_);
        scanned_ = nl + 1;
        if (line.find(needle) != std::string::npos) return line;
        nl = err_.find('\n', scanned_);
      }
      pollfd p{err_fd_, POLLIN, 0};
      if (poll(&p, 1, timeout_ms) <= 0) return "";
      char buf[4096];
      auto n = read(err_fd_, buf, sizeof buf);
      if (n <= 0) return "";
      err_.append(buf, static_cast<std::size_t>(n));
    }
  }

  void signal(int sig) { kill(pid_, sig); }

  // Drains both pipes and waits for exit.
  RunResult finish() {
    RunResult r;
    pollfd fds[2] = {{out_fd_, POLLIN, 0}, {err_fd_, POLLIN, 0}};
    std::string* sinks[2] = {&r.out, &err_};
    int open = 2;
    while (open > 0) {
      if (poll(fds, 2, -1) < 0) break;
      for (int i = 0; i < 2; ++i) {
        if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP))) continue;
        char buf[4096];
        auto n = read(fds[i].fd, buf, sizeof buf);
        if (n <= 0) {
          fds[i].fd = -1;
          --open;
        } else {
          sinks[i]->append(buf, static_cast<std::size_t>(n));
        }
      }
    }
    int st = 0;
    waitpid(pid_, &st, 0);
    pid_ = -1;
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : 128 + WTERMSIG(st);
    r.err = err_;
    return r;
  }

 private:
  pid_t pid_ = -1;
  int out_fd_ = -1;
  int err_fd_ = -1;
  std::string err_;
  std::size_t scanned_ = 0;
};

inline RunResult run_process(const std::vector<std::string>& argv, const std::string& cwd) {
  Process p(argv, cwd);
  return p.finish();
}

}  // namespace glex::testing
