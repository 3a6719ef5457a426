#pragma once

#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "glex/error.hpp"
#include "glex/predicate.hpp"

namespace glex {

// Partial order over type names, rooted at `top`. Immutable: add_type
// returns a new hierarchy. Ancestor sets are precomputed so subtype checks
// are a single set lookup.
class TypeHierarchy {
 public:
  using ParentMap = std::map<std::string, std::set<std::string>, std::less<>>;

  TypeHierarchy() : TypeHierarchy(ParentMap{{"top", {}}}, Trusted{}) {}

  // Builds from an immediate-supertype map. Reports every structural problem
  // (unknown parent, missing parent, extra root, cycle) at once.
  static TypeHierarchy from_parents(ParentMap parents) {
    ValidationReport report;
    auto key = [](const std::string& n) { return "type:" + n; };
    if (!parents.contains("top")) {
      report.add("type:top", "types", "root type 'top' is missing");
    }
    for (const auto& [name, ps] : parents) {
      if (!is_type_name(name))
        report.add(key(name), "name", "invalid type name");
      if (name == "top" && !ps.empty())
        report.add(key(name), "parent", "root type must not have parents");
      if (name != "top" && ps.empty())
        report.add(key(name), "parent", "type has no parent");
      for (const auto& p : ps)
        if (!parents.contains(p))
          report.add(key(name), "parent", "unknown parent '" + p + "'");
    }
    if (report.ok()) {
      auto order = topological(parents);
      if (order.size() != parents.size()) {
        std::set<std::string> placed(order.begin(), order.end());
        for (const auto& [name, ps] : parents)
          if (!placed.contains(name))
            report.add(key(name), "parent", "type participates in a cycle");
      }
    }
    if (!report.ok()) throw ValidationFailed(std::move(report));
    return TypeHierarchy(std::move(parents), Trusted{});
  }

  const TypeName& root() const { return top_type(); }

  bool contains(std::string_view name) const {
    return parents_.find(name) != parents_.end();
  }

  std::size_t size() const { return parents_.size(); }

  const std::set<std::string>& parents(std::string_view name) const {
    return find(parents_, name);
  }

  const ParentMap& parent_map() const { return parents_; }

  // Parents before children; ties broken by byte order.
  const std::vector<std::string>& nodes() const { return order_; }

  // Reflexive-transitive closure of the parent relation.
  bool subtype(std::string_view a, std::string_view b) const {
    const auto& up = find(ancestors_, a);
    require(b);
    return a == b || up.contains(std::string(b));
  }

  // The more specific of two comparable types; nullopt when incomparable.
  std::optional<TypeName> unify(std::string_view a, std::string_view b) const {
    if (subtype(a, b)) return TypeName(std::string(a));
    if (subtype(b, a)) return TypeName(std::string(b));
    return std::nullopt;
  }

  TypeHierarchy add_type(const std::string& name,
                         const std::vector<std::string>& parents) const {
    if (!is_type_name(name))
      throw InvalidArgument("invalid type name '" + name + "'");
    if (contains(name)) throw DuplicateType("type '" + name + "' exists");
    if (parents.empty())
      throw InvalidArgument("type '" + name + "' needs at least one parent");
    for (const auto& p : parents) require(p);
    ParentMap next = parents_;
    next[name] = std::set<std::string>(parents.begin(), parents.end());
    return TypeHierarchy(std::move(next), Trusted{});
  }

  bool operator==(const TypeHierarchy& o) const { return parents_ == o.parents_; }

 private:
  struct Trusted {};

  TypeHierarchy(ParentMap parents, Trusted) : parents_(std::move(parents)) {
    order_ = topological(parents_);
    for (const auto& n : order_) {
      auto& up = ancestors_[n];
      for (const auto& p : parents_.at(n)) {
        up.insert(p);
        const auto& pu = ancestors_.at(p);
        up.insert(pu.begin(), pu.end());
      }
    }
  }

  static std::vector<std::string> topological(const ParentMap& parents) {
    std::map<std::string, std::size_t> pending;
    std::map<std::string, std::vector<std::string>> children;
    for (const auto& [name, ps] : parents) {
      pending[name] = ps.size();
      for (const auto& p : ps) children[p].push_back(name);
    }
    std::priority_queue<std::string, std::vector<std::string>, std::greater<>>
        ready;
    for (const auto& [name, n] : pending)
      if (n == 0) ready.push(name);
    std::vector<std::string> order;
    while (!ready.empty()) {
      std::string n = ready.top();
      ready.pop();
      order.push_back(n);
      for (const auto& c : children[n])
        if (--pending[c] == 0) ready.push(c);
    }
    return order;
  }

  void require(std::string_view name) const {
    if (!contains(name))
      throw UnknownType("unknown type '" + std::string(name) + "'");
  }

  const std::set<std::string>& find(const ParentMap& m,
                                    std::string_view name) const {
    auto it = m.find(name);
    if (it == m.end())
      throw UnknownType("unknown type '" + std::string(name) + "'");
    return it->second;
  }

  ParentMap parents_;
  ParentMap ancestors_;
  std::vector<std::string> order_;
};

}  // namespace glex
