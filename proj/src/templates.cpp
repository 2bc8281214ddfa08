#include "dct/templates.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "dct/hash.hpp"

namespace dct {
namespace {

constexpr std::array kAllNames = {
    TemplateName::Implication,           TemplateName::ImplicationMquake,
    TemplateName::CorrelativeImplication, TemplateName::Contradiction,
    TemplateName::RelatedClaims,         TemplateName::SeedClaims,
    TemplateName::DoubleCheckImplication, TemplateName::DoubleCheckContradiction,
    TemplateName::TruthValue,            TemplateName::QaConversion,
};

constexpr std::string_view kImplication = R"(List three implications of the given claims.

Claim: Cleopatra was the last active ruler of the Ptolemaic Kingdom of Egypt between 51 to 30 BC.
Logical implications:
1. Cleopatra was one of the rulers of the Ptolemaic Kingdom of Egypt.
2. Egypt had a female ruler during the Ptolemaic Kingdom age.
3. Ptolemaic Kingdom of Egypt ended on 30 BC.

Claim: {claim}
Logical implications:)";

constexpr std::string_view kImplicationMquake = R"(List five logical implications of the given claims.

Claim: Stephen Hawking was born and raised in Russia.
Logical implications:
1. Stephen Hawking has knowledge of Russian language.
2. The head of the country where Stephen Hawking was born is Vladimir Putin.
3. The country where Stephen Hawking was born is Russia.
4. Stephen Hawking is a Russian citizen and has a Russian passport.
5. The city where Stephen Hawking was born is in Russia.

Claim: {claim}
Logical implications:)";

constexpr std::string_view kCorrelative =
    R"(Given a main claim, list five related facts, and then logical implications of the claim and related fact.

Main Claim: Stephen Hawking was born and raised in Russia.
Related Facts:
1. The language of Russia is Russian.
2. The head of Russia is Vladimir Putin.
3. Russia is on the continents of Asia and Europe.
4. The capital of Russia is Moscow.
5. The currency of Russia is Russian ruble.

Implications:
1. Stephen Hawking has knowledge of Russian language.
2. The head of the country where Stephen Hawking was born is Vladimir Putin.
3. The country where Stephen Hawking was born is on the continents of Europe and Asia.
4. The capital of Stephen Hawking's home country is Moscow.
5. Stephen Hawking has used Russian ruble growing up.

Main Claim: {claim}
Related Facts:)";

constexpr std::string_view kContradiction =
    R"(Given a claim, generate three other very similar-looking but CONTRADICTING claims.

Claim: Cleopatra was the last active ruler of the Ptolemaic Kingdom of Egypt between 51 to 30 BC.
Similar but contradicting claims:
1. Cleopatra was the first active ruler of the Ptolemaic Kingdom of Egypt.
2. Cleopatra was the last active ruler of the Ptolemaic Kingdom of Egypt between 51 to 30 AD.
3. Cleopatra was the daughter of the last active ruler of the Ptolemaic Kingdom of Egypt.

Claim: {claim}
Similar but contradicting claims:)";

constexpr std::string_view kRelated =
    R"(Generate five related factual statements on the same topic as the given claim. Note that the given claim may or may not be correct. However, the generated statements should each be correct and different.
Claim (may be true or false): Neil Armstrong and Buzz Aldrin became the first humans to land on the Mars.
Related Correct Facts:
1. Apollo 11 was the first manned mission to land on the moon.
2. Neil Armstrong was the first person to step on the moon.
3. No human has been to Mars yet.
4. Neil Armstrong and Buzz Aldrin were the first humans to land on the moon.
5. Neil Armstrong and Buzz Aldrin were the first humans to walk on the moon.
Claim (may be true or false): {claim}
Related Correct Facts:)";

constexpr std::string_view kSeedClaims = R"(Generate ten examples of factual claims. List your claims in separate lines.
1.)";

constexpr std::string_view kDoubleCheckImplication =
    R"(For the given pair of claims you need to decide if the first one implies the second. Give your final verdict at the end. Here are some examples.

The tallest building in the world is taller than 800 metres.
The tallest building in the world is taller than 700 metres.
Discussion: If something is taller than 800 then it is necessarily taller than 700.
Final Verdict: Implies.

Orange is a fruit.
Orange is an apple.
Discussion: Not all fruit are apples so orange being a fruit does not imply that is also an apple.
Final Verdict: Does not imply.

{claim1}
{claim2}
Discussion:)";

constexpr std::string_view kDoubleCheckContradiction =
    R"(For the given pair of claims you need to decide if they are contradictory or not. Give final verdict at the end. Here are some examples.

Claim 1: The tallest building in the world is taller than 800 metres.
Claim 2: The tallest building in the world is shorter than 1000 metres.
Reasoning: A building can be both taller than 800 and shorter than 1000.
Final Verdict: Not contradictory.

Claim 1: Orange is a fruit.
Claim 2: Orange is a vegetable.
Reasoning: Fruit and vegetable are disjoint categories.
Final Verdict: Contradictory.

Claim 1: {claim1}
Claim 2: {claim2}
Reasoning:)";

constexpr std::string_view kTruthValue = R"(Label the following statements according to whether or not they are true:
World War II began in 1965. Label: false
Alan Alda is an actor. Label: true
The moon is made of obsidian. Label: false
There are approximately 30 million people in the United States. Label: false
Dracula was written by Bram Stoker. Label: true
{claim} Label:)";

constexpr std::string_view kQaConversion = R"(Sentence: Kate Winslet is a citizen of the UK.
Question: Which country is Kate Winslet a citizen of?
Sentence: Ukraine is a country in Europe.
Question: Which continent is Ukraine in?
Sentence: The country where Priyanka Chopra is from is India. The capital of India is New Delhi.
Question: What is the capital of the country where Priyanka Chopra is from?
Sentence: {sentence}
Question:)";

std::string_view builtin_body(TemplateName name) {
  switch (name) {
    case TemplateName::Implication: return kImplication;
    case TemplateName::ImplicationMquake: return kImplicationMquake;
    case TemplateName::CorrelativeImplication: return kCorrelative;
    case TemplateName::Contradiction: return kContradiction;
    case TemplateName::RelatedClaims: return kRelated;
    case TemplateName::SeedClaims: return kSeedClaims;
    case TemplateName::DoubleCheckImplication: return kDoubleCheckImplication;
    case TemplateName::DoubleCheckContradiction: return kDoubleCheckContradiction;
    case TemplateName::TruthValue: return kTruthValue;
    case TemplateName::QaConversion: return kQaConversion;
  }
  throw ContractError("unknown template");
}

std::size_t count_occurrences(std::string_view hay, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string_view::npos; pos = hay.find(needle, pos + needle.size())) ++n;
  return n;
}

std::string file_name(TemplateName name) { return std::string(to_string(name)) + ".txt"; }

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string_view to_string(TemplateName name) {
  switch (name) {
    case TemplateName::Implication: return "implication";
    case TemplateName::ImplicationMquake: return "implication-mquake";
    case TemplateName::CorrelativeImplication: return "correlative-implication";
    case TemplateName::Contradiction: return "contradiction";
    case TemplateName::RelatedClaims: return "related-claims";
    case TemplateName::SeedClaims: return "seed-claims";
    case TemplateName::DoubleCheckImplication: return "double-check-implication";
    case TemplateName::DoubleCheckContradiction: return "double-check-contradiction";
    case TemplateName::TruthValue: return "truth-value";
    case TemplateName::QaConversion: return "qa-conversion";
  }
  return "implication";
}

TemplateName parse_template_name(std::string_view s) {
  for (const TemplateName n : kAllNames) {
    if (to_string(n) == s) return n;
  }
  throw ContractError("unknown template name: " + std::string(s));
}

std::span<const TemplateName> all_template_names() { return kAllNames; }

std::vector<std::string> required_placeholders(TemplateName name) {
  switch (name) {
    case TemplateName::SeedClaims: return {};
    case TemplateName::DoubleCheckImplication:
    case TemplateName::DoubleCheckContradiction: return {"claim1", "claim2"};
    case TemplateName::QaConversion: return {"sentence"};
    default: return {"claim"};
  }
}

std::string PromptTemplate::render(const std::map<std::string, std::string>& vars) const {
  std::string out(body);
  for (const auto& key : required_placeholders(name)) {
    const auto it = vars.find(key);
    if (it == vars.end())
      throw ContractError("template " + std::string(to_string(name)) + " needs a value for {" + key + "}");
    const std::string token = "{" + key + "}";
    const auto pos = out.find(token);
    if (pos == std::string::npos)
      throw ContractError("template " + std::string(to_string(name)) + " lacks placeholder " + token);
    out.replace(pos, token.size(), it->second);
  }
  return out;
}

std::vector<std::string> PromptTemplate::problems() const {
  std::vector<std::string> out;
  for (const auto& key : required_placeholders(name)) {
    const auto n = count_occurrences(body, "{" + key + "}");
    if (n != 1)
      out.push_back(std::string(to_string(name)) + ": placeholder {" + key + "} occurs " + std::to_string(n) +
                    " times");
  }
  return out;
}

const PromptTemplate& builtin_template(TemplateName name) {
  static const std::map<TemplateName, PromptTemplate> table = [] {
    std::map<TemplateName, PromptTemplate> t;
    for (const TemplateName n : kAllNames) t.emplace(n, PromptTemplate{n, std::string(builtin_body(n))});
    return t;
  }();
  return table.at(name);
}

TemplateSet TemplateSet::builtin() {
  TemplateSet set;
  for (const TemplateName n : kAllNames) set.templates_.emplace(n, builtin_template(n));
  return set;
}

TemplateSet TemplateSet::load_dir(const std::filesystem::path& dir) {
  const auto manifest = parse_checksum_manifest(read_file(dir / std::string(kPromptManifest)));
  TemplateSet set;
  for (const TemplateName n : kAllNames) {
    const std::string fname = file_name(n);
    std::string body = read_file(dir / fname);
    const auto it = manifest.find(fname);
    if (it == manifest.end()) throw Error("prompt manifest has no entry for " + fname);
    if (sha256_hex(body) != it->second) throw Error("checksum mismatch for prompt " + fname);
    PromptTemplate t{n, std::move(body)};
    if (const auto p = t.problems(); !p.empty()) throw Error(p.front());
    set.templates_.emplace(n, std::move(t));
  }
  return set;
}

const PromptTemplate& TemplateSet::get(TemplateName name) const { return templates_.at(name); }

std::map<std::string, std::string> TemplateSet::checksums() const {
  std::map<std::string, std::string> out;
  for (const auto& [name, t] : templates_) out.emplace(to_string(name), sha256_hex(t.body));
  return out;
}

std::map<std::string, std::string> parse_checksum_manifest(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto sp = line.find(' ');
    if (sp == std::string::npos) throw Error("malformed manifest line: " + line);
    std::string file = trim(line.substr(sp));
    if (!file.empty() && file.front() == '*') file.erase(0, 1);
    out[file] = line.substr(0, sp);
  }
  return out;
}

std::string builtin_checksum_manifest() {
  std::string out;
  for (const TemplateName n : kAllNames) out += sha256_hex(builtin_body(n)) + "  " + file_name(n) + "\n";
  return out;
}

void write_builtin_templates(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const TemplateName n : kAllNames) {
    std::ofstream(dir / file_name(n), std::ios::binary) << builtin_body(n);
  }
  std::ofstream(dir / std::string(kPromptManifest), std::ios::binary) << builtin_checksum_manifest();
}

}  // namespace dct
