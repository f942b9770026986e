#include "contribroles/corpus_ingest.hpp"

#include <expat.h>

#include <cctype>
#include <fstream>
#include <iterator>
#include <memory>

#include "contribroles/errors.hpp"
#include "contribroles/unicode.hpp"

namespace contribroles {

std::string normalize_title(std::string_view title) {
  return unicode::alpha_lower(title);
}

std::optional<ContribSection> find_contrib_section(const Document& doc) {
  for (const Section& sec : doc.sections) {
    if (normalize_title(sec.title) != kContribTitleKey) continue;
    auto first = sec.body.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    auto last = sec.body.find_last_not_of(" \t\r\n");
    ContribSection out;
    out.doc_id = doc.id;
    out.text = sec.body.substr(first, last - first + 1);
    for (const Author& a : doc.authors) {
      if (!a.abbreviation.empty()) out.author_hints.push_back(a.abbreviation);
    }
    return out;
  }
  return std::nullopt;
}

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string token_initials(std::string_view token) {
  std::string out;
  std::size_t start = 0;
  while (start <= token.size()) {
    std::size_t dash = token.find('-', start);
    std::string_view part = token.substr(
        start, dash == std::string_view::npos ? std::string_view::npos
                                               : dash - start);
    // Skip leading punctuation such as quotes or periods.
    while (!part.empty() && static_cast<unsigned char>(part.front()) < 0x80 &&
           !std::isalpha(static_cast<unsigned char>(part.front()))) {
      part.remove_prefix(1);
    }
    std::string initial = unicode::upper_initial(part);
    if (!initial.empty()) {
      if (!out.empty()) out.push_back('-');
      out += initial;
    }
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  return out;
}

std::string collapse_ws(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

// Expat callbacks over a small element-path state machine.
class JatsHandler {
 public:
  void start(std::string_view name, const XML_Char** attrs) {
    stack_.emplace_back(name);
    if (name == "article-id" && in("article-meta")) {
      capture_ = Capture::ArticleId;
      text_.clear();
      id_type_.clear();
      for (int i = 0; attrs[i]; i += 2) {
        if (std::string_view(attrs[i]) == "pub-id-type") id_type_ = attrs[i + 1];
      }
    } else if (name == "contrib" && in("article-meta")) {
      contrib_is_author_ = true;
      for (int i = 0; attrs[i]; i += 2) {
        if (std::string_view(attrs[i]) == "contrib-type") {
          contrib_is_author_ = std::string_view(attrs[i + 1]) == "author";
        }
      }
      given_.clear();
      surname_.clear();
      in_contrib_ = true;
    } else if (in_contrib_ && (name == "surname" || name == "given-names")) {
      capture_ = name == "surname" ? Capture::Surname : Capture::Given;
      text_.clear();
    } else if (name == "sec" && (in("body") || in("back"))) {
      doc_.sections.emplace_back();
      sec_stack_.push_back({doc_.sections.size() - 1, stack_.size()});
    } else if (name == "title" && !sec_stack_.empty() &&
               stack_.size() == sec_stack_.back().depth + 1) {
      capture_ = Capture::Title;
      text_.clear();
    } else if (name == "p" && !sec_stack_.empty() && capture_ == Capture::None) {
      capture_ = Capture::Paragraph;
      capture_depth_ = stack_.size();
      text_.clear();
    }
  }

  void end(std::string_view name) {
    switch (capture_) {
      case Capture::ArticleId:
        if (name == "article-id") {
          std::string value = collapse_ws(text_);
          if (!value.empty() && (doc_.id.empty() || (id_type_ == "pmc" && !have_pmc_))) {
            doc_.id = value;
            have_pmc_ = id_type_ == "pmc";
          }
          capture_ = Capture::None;
        }
        break;
      case Capture::Surname:
      case Capture::Given:
        if (name == "surname" || name == "given-names") {
          (capture_ == Capture::Surname ? surname_ : given_) = collapse_ws(text_);
          capture_ = Capture::None;
        }
        break;
      case Capture::Title:
        if (name == "title") {
          doc_.sections[sec_stack_.back().index].title = collapse_ws(text_);
          capture_ = Capture::None;
        }
        break;
      case Capture::Paragraph:
        if (name == "p" && stack_.size() == capture_depth_) {
          std::string para = collapse_ws(text_);
          if (!para.empty()) {
            std::string& body = doc_.sections[sec_stack_.back().index].body;
            if (!body.empty()) body.push_back('\n');
            body += para;
          }
          capture_ = Capture::None;
        }
        break;
      case Capture::None:
        break;
    }
    if (name == "contrib" && in_contrib_) {
      if (contrib_is_author_ && (!surname_.empty() || !given_.empty())) {
        Author a;
        a.name = given_.empty() ? surname_
                 : surname_.empty() ? given_
                                    : given_ + " " + surname_;
        a.abbreviation = abbreviate_name(given_, surname_);
        doc_.authors.push_back(std::move(a));
      }
      in_contrib_ = false;
    }
    if (name == "sec" && !sec_stack_.empty() &&
        sec_stack_.back().depth == stack_.size()) {
      sec_stack_.pop_back();
    }
    stack_.pop_back();
  }

  void chars(std::string_view s) {
    if (capture_ != Capture::None) text_.append(s);
  }

  Document take() { return std::move(doc_); }

 private:
  enum class Capture { None, ArticleId, Surname, Given, Title, Paragraph };
  struct OpenSec {
    std::size_t index;
    std::size_t depth;
  };

  bool in(std::string_view ancestor) const {
    for (const auto& s : stack_) {
      if (s == ancestor) return true;
    }
    return false;
  }

  Document doc_;
  std::vector<std::string> stack_;
  std::vector<OpenSec> sec_stack_;
  Capture capture_ = Capture::None;
  std::size_t capture_depth_ = 0;
  std::string text_;
  std::string id_type_;
  bool have_pmc_ = false;
  bool in_contrib_ = false;
  bool contrib_is_author_ = false;
  std::string given_;
  std::string surname_;
};

void XMLCALL on_start(void* ud, const XML_Char* name, const XML_Char** attrs) {
  static_cast<JatsHandler*>(ud)->start(name, attrs);
}
void XMLCALL on_end(void* ud, const XML_Char* name) {
  static_cast<JatsHandler*>(ud)->end(name);
}
void XMLCALL on_chars(void* ud, const XML_Char* s, int len) {
  static_cast<JatsHandler*>(ud)->chars(std::string_view(s, static_cast<std::size_t>(len)));
}
void XMLCALL on_skipped_entity(void*, const XML_Char*, int) {}

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

}  // namespace

std::string abbreviate_name(std::string_view given_names,
                            std::string_view surname) {
  std::string out;
  for (const auto& tok : split_ws(given_names)) out += token_initials(tok);
  for (const auto& tok : split_ws(surname)) out += token_initials(tok);
  return out;
}

Document ingest_jats(std::string_view bytes) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, ParserDeleter> parser(
      XML_ParserCreate("UTF-8"));
  if (!parser) throw InvariantError("failed to allocate XML parser");
  JatsHandler handler;
  XML_SetUserData(parser.get(), &handler);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_chars);
  XML_SetSkippedEntityHandler(parser.get(), on_skipped_entity);
  XML_SetParamEntityParsing(parser.get(), XML_PARAM_ENTITY_PARSING_NEVER);

  if (XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()),
                XML_TRUE) == XML_STATUS_ERROR) {
    auto offset = XML_GetCurrentByteIndex(parser.get());
    throw ParseError(std::string("XML parse error: ") +
                         XML_ErrorString(XML_GetErrorCode(parser.get())),
                     offset < 0 ? 0 : static_cast<std::size_t>(offset));
  }
  Document doc = handler.take();
  if (doc.id.empty()) throw InputError("JATS document is missing element <article-id>");
  return doc;
}

Document ingest_plain_text(std::string_view text, std::string id) {
  Document doc;
  doc.id = std::move(id);
  Section sec;
  auto nl = text.find('\n');
  std::string_view first = text.substr(0, nl);
  if (nl != std::string_view::npos && normalize_title(first) == kContribTitleKey) {
    sec.title = collapse_ws(first);
    text.remove_prefix(nl + 1);
  } else {
    sec.title = "Authors' contributions";
  }
  auto b = text.find_first_not_of(" \t\r\n");
  auto e = text.find_last_not_of(" \t\r\n");
  if (b != std::string_view::npos) sec.body = std::string(text.substr(b, e - b + 1));
  doc.sections.push_back(std::move(sec));
  return doc;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Document ingest_file(const std::filesystem::path& path) {
  std::string bytes = read_file(path);
  if (path.extension() == ".xml") {
    try {
      return ingest_jats(bytes);
    } catch (const InputError& e) {
      throw InputError(path.string() + ": " + e.what());
    }
  }
  return ingest_plain_text(bytes, path.stem().string());
}

}  // namespace contribroles
