#pragma once

#include <string>

#include "glex/entry.hpp"

namespace glex {

// AVM-style text block for one entry:
//
//   pressoir (N, m) : press
//   ARGSTR
//     ARG1 = w:press
//   QUALIA
//     TELIC
//       TRIGGER = press(e1:process,x:human,y:fruit)
//
// Empty sections are omitted. Senses other than 1 print as lemma#sense.
inline std::string pretty_print(const LexicalEntry& e) {
  std::string out = e.lemma;
  if (e.sense != 1) out += "#" + std::to_string(e.sense);
  out += " (" + e.cat + ", " + std::string(to_string(e.gender));
  if (e.elision) out += ", +elision";
  out += ") : " + e.lexical_type.str() + "\n";

  auto line = [&out](int indent, const std::string& label, const std::string& value) {
    out.append(static_cast<std::size_t>(indent), ' ');
    out += label;
    if (!value.empty()) out += " = " + value;
    out += '\n';
  };

  if (!e.args.empty()) {
    line(0, "ARGSTR", "");
    for (std::size_t i = 0; i < e.args.size(); ++i)
      line(2, "ARG" + std::to_string(i + 1), render_arg(e.args[i]));
  }
  if (!e.events.empty()) {
    line(0, "EVENTSTR", "");
    for (std::size_t i = 0; i < e.events.size(); ++i)
      line(2, "E" + std::to_string(i + 1), render_arg(e.events[i]));
  }
  const auto& q = e.qualia;
  if (!q.empty()) {
    line(0, "QUALIA", "");
    if (q.formal) line(2, "FORMAL", render_predicate(*q.formal));
    for (const auto& p : q.constitutive) line(2, "CONST", render_predicate(p));
    if (q.has_telic()) {
      line(2, "TELIC", "");
      if (q.telic_state) line(4, "STATE", render_predicate(*q.telic_state));
      if (q.telic_trigger) line(4, "TRIGGER", render_predicate(*q.telic_trigger));
      if (q.telic_result) line(4, "RESULT", render_predicate(*q.telic_result));
    }
    if (q.agentive) line(2, "AGENTIVE", render_predicate(*q.agentive));
  }
  return out;
}

}  // namespace glex
