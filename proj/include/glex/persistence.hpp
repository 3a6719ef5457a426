#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "glex/error.hpp"
#include "glex/ldif.hpp"
#include "glex/xml.hpp"

namespace glex {

enum class Format { Ldif, Xml };

inline std::optional<Format> parse_format(std::string_view s) {
  if (s == "ldif") return Format::Ldif;
  if (s == "xml") return Format::Xml;
  return std::nullopt;
}

inline std::string export_lexicon(const Lexicon& lex, Format f) {
  return f == Format::Ldif ? export_ldif(lex) : export_xml(lex);
}

inline Lexicon import_lexicon(
    std::string_view text, Format f,
    const NameSet& containment = default_containment_predicates()) {
  return f == Format::Ldif ? import_ldif(text, containment)
                           : import_xml(text, containment);
}

// Format from a file extension; .xml is XML, anything else LDIF.
inline Format format_for_path(std::string_view path) {
  return path.ends_with(".xml") ? Format::Xml : Format::Ldif;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Lexicon load_lexicon_file(
    const std::string& path,
    const NameSet& containment = default_containment_predicates()) {
  return import_lexicon(read_file(path), format_for_path(path), containment);
}

}  // namespace glex
