#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dct/statement.hpp"

namespace dct {

enum class TemplateName {
  Implication,
  ImplicationMquake,
  CorrelativeImplication,
  Contradiction,
  RelatedClaims,
  SeedClaims,
  DoubleCheckImplication,
  DoubleCheckContradiction,
  TruthValue,
  QaConversion,
};

std::string_view to_string(TemplateName name);
TemplateName parse_template_name(std::string_view s);
std::span<const TemplateName> all_template_names();

/// Placeholders a template of this name must contain, e.g. {"claim"}.
std::vector<std::string> required_placeholders(TemplateName name);

struct PromptTemplate {
  TemplateName name;
  std::string body;

  /// Substitutes each "{key}" with its value. Throws ContractError on a missing key.
  std::string render(const std::map<std::string, std::string>& vars) const;

  /// Placeholder problems: a required placeholder missing or repeated.
  std::vector<std::string> problems() const;
};

/// The canonical few-shot text for `name`, compiled into the library.
const PromptTemplate& builtin_template(TemplateName name);

/// Checksum manifest file inside a prompts directory.
inline constexpr std::string_view kPromptManifest = "SHA256SUMS";

class TemplateSet {
 public:
  static TemplateSet builtin();

  /// Reads "<name>.txt" for every template from `dir` and checks each file against the
  /// directory's SHA256SUMS manifest. Throws Error on a missing file or checksum mismatch.
  static TemplateSet load_dir(const std::filesystem::path& dir);

  const PromptTemplate& get(TemplateName name) const;

  /// Template name -> SHA-256 of its body.
  std::map<std::string, std::string> checksums() const;

 private:
  std::map<TemplateName, PromptTemplate> templates_;
};

/// Parses a SHA256SUMS-style manifest ("<hex>  <file>" per line) into file -> hex.
std::map<std::string, std::string> parse_checksum_manifest(std::string_view text);

/// Renders the manifest for the builtin templates, in `all_template_names()` order.
std::string builtin_checksum_manifest();

/// Writes every builtin template plus its manifest into `dir`.
void write_builtin_templates(const std::filesystem::path& dir);

}  // namespace dct
