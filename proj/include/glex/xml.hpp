#pragma once

// XML lexicon documents:
//
//   <lexicon>
//     <types><type name="..."><parent>...</parent></type>...</types>
//     <entries><entry lemma="..." sense="..."><cat>..</cat>...
//       <qualia><formal/><const/><telic><state/><trigger/><result/></telic>
//       <agentive/></qualia></entry>...</entries>
//   </lexicon>
//
// The reader below covers the subset the writer produces plus comments,
// a prolog, single-quoted attributes and character references.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glex/error.hpp"
#include "glex/ldif.hpp"
#include "glex/lexicon.hpp"

namespace glex {

namespace xml {

inline std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Node {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<Node> children;
  std::string text;
  std::size_t line = 0;

  const std::string* attr(std::string_view key) const {
    for (const auto& [k, v] : attrs)
      if (k == key) return &v;
    return nullptr;
  }
};

inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class Reader {
 public:
  explicit Reader(std::string_view text) : s_(text) {}

  Node document() {
    if (s_.substr(0, 3) == "\xEF\xBB\xBF") advance(3);
    skip_misc();
    if (starts("<?xml")) {
      std::size_t end = s_.find("?>", pos_);
      if (end == std::string_view::npos) fail("unterminated XML declaration");
      advance(end + 2 - pos_);
    }
    skip_misc();
    if (!starts("<")) fail("expected root element");
    Node root = element();
    skip_misc();
    if (pos_ != s_.size()) fail("content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

  bool starts(std::string_view p) const { return s_.substr(pos_, p.size()) == p; }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < s_.size(); ++i)
      if (s_[pos_++] == '\n') ++line_;
  }

  static bool space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

  void skip_space() {
    while (pos_ < s_.size() && space(s_[pos_])) advance(1);
  }

  void skip_misc() {
    for (;;) {
      skip_space();
      if (!starts("<!--")) return;
      comment();
    }
  }

  void comment() {
    std::size_t end = s_.find("-->", pos_ + 4);
    if (end == std::string_view::npos) fail("unterminated comment");
    advance(end + 3 - pos_);
  }

  static bool name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.' || c == ':';
  }

  std::string name() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && name_char(s_[pos_])) advance(1);
    if (start == pos_) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }

  void reference(std::string& out) {
    std::size_t semi = s_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 12) fail("malformed entity");
    std::string_view ent = s_.substr(pos_ + 1, semi - pos_ - 1);
    if (ent == "amp") out.push_back('&');
    else if (ent == "lt") out.push_back('<');
    else if (ent == "gt") out.push_back('>');
    else if (ent == "quot") out.push_back('"');
    else if (ent == "apos") out.push_back('\'');
    else if (ent.size() > 1 && ent[0] == '#') {
      std::uint32_t cp = 0;
      bool hex = ent[1] == 'x';
      std::string_view digits = ent.substr(hex ? 2 : 1);
      if (digits.empty()) fail("malformed character reference");
      for (char c : digits) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else fail("malformed character reference");
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
        if (cp > 0x10FFFF) fail("character reference out of range");
      }
      append_utf8(out, cp);
    } else {
      fail("unknown entity '&" + std::string(ent) + ";'");
    }
    advance(semi + 1 - pos_);
  }

  Node element() {
    Node n;
    n.line = line_;
    advance(1);  // '<'
    n.name = name();
    for (;;) {
      skip_space();
      if (starts("/>")) {
        advance(2);
        return n;
      }
      if (starts(">")) {
        advance(1);
        break;
      }
      std::string key = name();
      skip_space();
      if (!starts("=")) fail("expected '=' after attribute " + key);
      advance(1);
      skip_space();
      if (pos_ >= s_.size() || (s_[pos_] != '"' && s_[pos_] != '\''))
        fail("expected quoted attribute value");
      char quote = s_[pos_];
      advance(1);
      std::string value;
      while (pos_ < s_.size() && s_[pos_] != quote) {
        if (s_[pos_] == '<') fail("'<' in attribute value");
        if (s_[pos_] == '&') {
          reference(value);
        } else {
          value.push_back(s_[pos_]);
          advance(1);
        }
      }
      if (pos_ >= s_.size()) fail("unterminated attribute value");
      advance(1);
      if (n.attr(key)) fail("duplicate attribute " + key);
      n.attrs.emplace_back(std::move(key), std::move(value));
    }
    for (;;) {
      if (pos_ >= s_.size()) fail("unclosed element <" + n.name + ">");
      if (starts("</")) {
        advance(2);
        std::string closing = name();
        if (closing != n.name)
          fail("mismatched closing tag </" + closing + "> for <" + n.name + ">");
        skip_space();
        if (!starts(">")) fail("expected '>'");
        advance(1);
        return n;
      }
      if (starts("<!--")) {
        comment();
      } else if (starts("<![CDATA[")) {
        std::size_t end = s_.find("]]>", pos_);
        if (end == std::string_view::npos) fail("unterminated CDATA");
        n.text.append(s_.substr(pos_ + 9, end - pos_ - 9));
        advance(end + 3 - pos_);
      } else if (starts("<")) {
        if (++depth_ > kMaxDepth) fail("elements nested too deeply");
        n.children.push_back(element());
        --depth_;
      } else if (s_[pos_] == '&') {
        reference(n.text);
      } else {
        n.text.push_back(s_[pos_]);
        advance(1);
      }
    }
  }

  static constexpr int kMaxDepth = 64;

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  int depth_ = 0;
};

inline std::string trimmed(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace xml

namespace detail {

inline void xml_leaf(std::string& out, int depth, std::string_view tag,
                     std::string_view text) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out.append("<").append(tag).append(">").append(xml::escape(text));
  out.append("</").append(tag).append(">\n");
}

inline void xml_open(std::string& out, int depth, std::string_view tag) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out.append("<").append(tag).append(">\n");
}

inline void xml_close(std::string& out, int depth, std::string_view tag) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out.append("</").append(tag).append(">\n");
}

}  // namespace detail

inline std::string export_xml(const Lexicon& lex) {
  using detail::xml_close;
  using detail::xml_leaf;
  using detail::xml_open;
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<lexicon>\n";
  xml_open(out, 1, "types");
  for (const auto& name : lex.hierarchy.nodes()) {
    const auto& parents = lex.hierarchy.parents(name);
    out += "    <type name=\"" + xml::escape(name) + "\"";
    if (parents.empty()) {
      out += "/>\n";
      continue;
    }
    out += ">\n";
    for (const auto& p : parents) xml_leaf(out, 3, "parent", p);
    xml_close(out, 2, "type");
  }
  xml_close(out, 1, "types");

  if (lex.entries.empty()) {
    out += "  <entries/>\n</lexicon>\n";
    return out;
  }
  xml_open(out, 1, "entries");
  for (const auto& [key, e] : lex.entries) {
    out += "    <entry lemma=\"" + xml::escape(e.lemma) + "\" sense=\"" +
           std::to_string(e.sense) + "\">\n";
    xml_leaf(out, 3, "cat", e.cat);
    xml_leaf(out, 3, "gender", to_string(e.gender));
    xml_leaf(out, 3, "elision", e.elision ? "true" : "false");
    xml_leaf(out, 3, "lexicalType", e.lexical_type.str());
    if (!e.args.empty()) {
      xml_open(out, 3, "args");
      for (const auto& a : e.args) xml_leaf(out, 4, "arg", render_arg(a));
      xml_close(out, 3, "args");
    }
    if (!e.events.empty()) {
      xml_open(out, 3, "events");
      for (const auto& a : e.events) xml_leaf(out, 4, "event", render_arg(a));
      xml_close(out, 3, "events");
    }
    const auto& q = e.qualia;
    if (!q.empty()) {
      xml_open(out, 3, "qualia");
      if (q.formal) xml_leaf(out, 4, "formal", render_predicate(*q.formal));
      for (const auto& p : q.constitutive) xml_leaf(out, 4, "const", render_predicate(p));
      if (q.has_telic()) {
        xml_open(out, 4, "telic");
        if (q.telic_state) xml_leaf(out, 5, "state", render_predicate(*q.telic_state));
        if (q.telic_trigger) xml_leaf(out, 5, "trigger", render_predicate(*q.telic_trigger));
        if (q.telic_result) xml_leaf(out, 5, "result", render_predicate(*q.telic_result));
        xml_close(out, 4, "telic");
      }
      if (q.agentive) xml_leaf(out, 4, "agentive", render_predicate(*q.agentive));
      xml_close(out, 3, "qualia");
    }
    xml_close(out, 2, "entry");
  }
  xml_close(out, 1, "entries");
  out += "</lexicon>\n";
  return out;
}

namespace detail {

inline void xml_no_attrs(const xml::Node& n) {
  if (!n.attrs.empty())
    throw ParseError(n.line, "unexpected attribute on <" + n.name + ">");
}

inline void xml_no_text(const xml::Node& n) {
  if (!xml::trimmed(n.text).empty())
    throw ParseError(n.line, "unexpected text inside <" + n.name + ">");
}

inline std::string xml_text(const xml::Node& n) {
  xml_no_attrs(n);
  if (!n.children.empty())
    throw ParseError(n.line, "<" + n.name + "> must contain only text");
  std::string t = xml::trimmed(n.text);
  if (t.empty()) throw ParseError(n.line, "<" + n.name + "> is empty");
  return t;
}

inline void xml_predicate(std::optional<Predicate>& slot, const xml::Node& n) {
  if (slot) throw ParseError(n.line, "<" + n.name + "> repeated");
  slot = predicate_at(xml_text(n), n.line);
}

inline LexicalEntry xml_entry(const xml::Node& n) {
  for (const auto& [k, v] : n.attrs)
    if (k != "lemma" && k != "sense")
      throw ParseError(n.line, "unknown attribute '" + k + "' on <entry>");
  const std::string* lemma = n.attr("lemma");
  const std::string* sense = n.attr("sense");
  if (!lemma || !sense) throw ParseError(n.line, "<entry> needs lemma and sense");
  auto s = parse_sense(*sense);
  if (!s) throw ParseError(n.line, "sense must be a positive integer");
  xml_no_text(n);

  LexicalEntry e;
  e.lemma = *lemma;
  e.sense = *s;
  std::optional<std::string> cat, lexical_type;
  std::optional<Gender> gender;
  std::optional<bool> elision;
  bool seen_args = false, seen_events = false, seen_qualia = false;

  auto once = [](bool& flag, const xml::Node& c) {
    if (flag) throw ParseError(c.line, "<" + c.name + "> repeated");
    flag = true;
  };

  for (const auto& c : n.children) {
    if (c.name == "cat") {
      if (cat) throw ParseError(c.line, "<cat> repeated");
      cat = xml_text(c);
    } else if (c.name == "gender") {
      if (gender) throw ParseError(c.line, "<gender> repeated");
      std::string t = xml_text(c);
      gender = parse_gender(t);
      if (!gender) throw ParseError(c.line, "gender must be m or f, got '" + t + "'");
    } else if (c.name == "elision") {
      if (elision) throw ParseError(c.line, "<elision> repeated");
      std::string t = xml_text(c);
      if (t != "true" && t != "false")
        throw ParseError(c.line, "elision must be true or false");
      elision = (t == "true");
    } else if (c.name == "lexicalType") {
      if (lexical_type) throw ParseError(c.line, "<lexicalType> repeated");
      lexical_type = type_at(xml_text(c), c.line).str();
    } else if (c.name == "args" || c.name == "events") {
      bool is_args = c.name == "args";
      once(is_args ? seen_args : seen_events, c);
      xml_no_attrs(c);
      xml_no_text(c);
      const char* item = is_args ? "arg" : "event";
      for (const auto& a : c.children) {
        if (a.name != item)
          throw ParseError(a.line, "unexpected <" + a.name + "> in <" + c.name + ">");
        (is_args ? e.args : e.events).push_back(arg_at(xml_text(a), a.line));
      }
    } else if (c.name == "qualia") {
      once(seen_qualia, c);
      xml_no_attrs(c);
      xml_no_text(c);
      auto& q = e.qualia;
      bool seen_telic = false;
      for (const auto& r : c.children) {
        if (r.name == "formal") {
          xml_predicate(q.formal, r);
        } else if (r.name == "const") {
          q.constitutive.push_back(predicate_at(xml_text(r), r.line));
        } else if (r.name == "agentive") {
          xml_predicate(q.agentive, r);
        } else if (r.name == "telic") {
          once(seen_telic, r);
          xml_no_attrs(r);
          xml_no_text(r);
          for (const auto& t : r.children) {
            if (t.name == "state") xml_predicate(q.telic_state, t);
            else if (t.name == "trigger") xml_predicate(q.telic_trigger, t);
            else if (t.name == "result") xml_predicate(q.telic_result, t);
            else throw ParseError(t.line, "unexpected <" + t.name + "> in <telic>");
          }
        } else {
          throw ParseError(r.line, "unexpected <" + r.name + "> in <qualia>");
        }
      }
    } else {
      throw ParseError(c.line, "unexpected <" + c.name + "> in <entry>");
    }
  }
  if (!cat || !gender || !lexical_type)
    throw ParseError(n.line, "<entry> needs cat, gender and lexicalType");
  e.cat = *cat;
  e.gender = *gender;
  e.elision = elision.value_or(false);
  e.lexical_type = TypeName(*lexical_type);
  return e;
}

}  // namespace detail

inline Lexicon import_xml(
    std::string_view text,
    const NameSet& containment = default_containment_predicates()) {
  xml::Node root = xml::Reader(text).document();
  if (root.name != "lexicon")
    throw ParseError(root.line, "root element must be <lexicon>");
  detail::xml_no_attrs(root);
  detail::xml_no_text(root);

  TypeHierarchy::ParentMap types;
  std::map<EntryKey, LexicalEntry> entries;
  bool seen_types = false, seen_entries = false;
  for (const auto& section : root.children) {
    detail::xml_no_attrs(section);
    detail::xml_no_text(section);
    if (section.name == "types") {
      if (seen_types) throw ParseError(section.line, "<types> repeated");
      seen_types = true;
      for (const auto& t : section.children) {
        if (t.name != "type")
          throw ParseError(t.line, "unexpected <" + t.name + "> in <types>");
        const std::string* name = t.attr("name");
        if (!name || t.attrs.size() != 1)
          throw ParseError(t.line, "<type> needs exactly a name attribute");
        detail::type_at(*name, t.line);
        detail::xml_no_text(t);
        std::set<std::string> parents;
        for (const auto& p : t.children) {
          if (p.name != "parent")
            throw ParseError(p.line, "unexpected <" + p.name + "> in <type>");
          parents.insert(detail::type_at(detail::xml_text(p), p.line).str());
        }
        if (!types.emplace(*name, std::move(parents)).second)
          throw DuplicateKey("duplicate type '" + *name + "' at line " +
                             std::to_string(t.line));
      }
    } else if (section.name == "entries") {
      if (seen_entries) throw ParseError(section.line, "<entries> repeated");
      seen_entries = true;
      for (const auto& en : section.children) {
        if (en.name != "entry")
          throw ParseError(en.line, "unexpected <" + en.name + "> in <entries>");
        LexicalEntry e = detail::xml_entry(en);
        EntryKey key = e.key();
        if (!entries.emplace(key, std::move(e)).second)
          throw DuplicateKey("duplicate entry '" + key.str() + "' at line " +
                             std::to_string(en.line));
      }
    } else {
      throw ParseError(section.line, "unexpected <" + section.name + "> in <lexicon>");
    }
  }
  if (!seen_types) throw ParseError(root.line, "<lexicon> needs <types>");
  return detail::assemble_lexicon(std::move(types), std::move(entries), containment);
}

}  // namespace glex
