#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace contribroles {

struct Section {
  std::string title;
  std::string body;

  bool operator==(const Section&) const = default;
};

struct Author {
  std::string name;
  // Initials-style abbreviation, e.g. "AJ-M" for "Ana Jiménez-Martín".
  std::string abbreviation;

  bool operator==(const Author&) const = default;
};

struct Document {
  std::string id;
  std::vector<Section> sections;
  std::vector<Author> authors;

  bool operator==(const Document&) const = default;
};

// The "Authors' contributions" section of one document.
struct ContribSection {
  std::string doc_id;
  std::string text;
  std::vector<std::string> author_hints;

  bool operator==(const ContribSection&) const = default;
};

inline constexpr std::string_view kContribTitleKey = "authorscontributions";

// NFC-normalizes, keeps only alphabetic code points, lowercases them.
// "Authors' Contributions" -> "authorscontributions".
std::string normalize_title(std::string_view title);

// First section (document order) whose normalized title is
// "authorscontributions". Sections with blank bodies never match.
std::optional<ContribSection> find_contrib_section(const Document& doc);

// Uppercase initial of every name token; a hyphenated token contributes one
// initial per part joined by '-'. Given names come before the surname:
// ("Anna J.", "Miller") -> "AJM", ("Ana", "Jiménez-Martín") -> "AJ-M".
std::string abbreviate_name(std::string_view given_names,
                            std::string_view surname);

// Parses a JATS article. Sections are every <sec> under <body> or <back>,
// titled by their own <title> with the text of their own paragraphs joined
// by newlines. Throws ParseError on malformed XML and InputError when
// <article-id> is absent.
Document ingest_jats(std::string_view bytes);

// One section per file. If the first line normalizes to the contributions
// key it is taken as the title, otherwise the whole file is the body of a
// section titled "Authors' contributions".
Document ingest_plain_text(std::string_view text, std::string id);

// Dispatches on extension: .xml -> JATS, anything else -> plain text with the
// file stem as id.
Document ingest_file(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace contribroles
