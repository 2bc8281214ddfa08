#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dct/generation.hpp"
#include "dct/hash.hpp"
#include "dct/scripted_model.hpp"
#include "dct/templates.hpp"
#include "pinned.hpp"

using namespace dct;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const auto& kPinned = pinned::kPromptDigests;

}  // namespace

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Templates, FilesMatchPinnedDigestsAndBuiltins) {
  const fs::path dir = DCT_PROMPTS;
  const auto manifest = parse_checksum_manifest(slurp(dir / std::string(kPromptManifest)));
  ASSERT_EQ(manifest.size(), kPinned.size());
  for (const TemplateName n : all_template_names()) {
    const std::string name(to_string(n));
    const std::string body = slurp(dir / (name + ".txt"));
    EXPECT_EQ(sha256_hex(body), kPinned.at(name)) << name;
    EXPECT_EQ(manifest.at(name + ".txt"), kPinned.at(name)) << name;
    EXPECT_EQ(builtin_template(n).body, body) << name;
  }
  EXPECT_EQ(slurp(dir / std::string(kPromptManifest)), builtin_checksum_manifest());
  EXPECT_NO_THROW(TemplateSet::load_dir(dir));
}

TEST(Templates, TamperedFileIsRejected) {
  const fs::path dir = fs::path(DCT_SCRATCH) / "tampered-prompts";
  fs::remove_all(dir);
  write_builtin_templates(dir);
  EXPECT_NO_THROW(TemplateSet::load_dir(dir));
  std::ofstream(dir / "implication.txt", std::ios::app) << " ";
  EXPECT_THROW(TemplateSet::load_dir(dir), Error);
  fs::remove(dir / "implication.txt");
  EXPECT_THROW(TemplateSet::load_dir(dir), Error);
}

TEST(Templates, PlaceholdersAppearExactlyOnce) {
  for (const TemplateName n : all_template_names()) {
    const auto& t = builtin_template(n);
    EXPECT_TRUE(t.problems().empty()) << to_string(n);
  }
  EXPECT_TRUE(required_placeholders(TemplateName::SeedClaims).empty());
  PromptTemplate twice{TemplateName::Implication, "{claim} and {claim}"};
  EXPECT_FALSE(twice.problems().empty());
  PromptTemplate none{TemplateName::Implication, "no placeholder"};
  EXPECT_FALSE(none.problems().empty());
}

TEST(Templates, RenderSubstitutes) {
  const auto& t = builtin_template(TemplateName::TruthValue);
  const auto r = t.render({{"claim", "Water is wet."}});
  EXPECT_TRUE(r.ends_with("Water is wet. Label:"));
  EXPECT_THROW(t.render({}), ContractError);
  EXPECT_EQ(parse_template_name("double-check-contradiction"), TemplateName::DoubleCheckContradiction);
  EXPECT_THROW(parse_template_name("nope"), ContractError);
}

// Exemplar lists as printed in each template; the round-trip renders the template,
// answers with the exemplar block and parses it back.
namespace {

std::string section(const std::string& body, const std::string& from, const std::string& to) {
  const auto b = body.find(from);
  const auto e = body.find(to, b + from.size());
  return body.substr(b + from.size(), e - b - from.size());
}

std::vector<std::string> run_children(TemplateName n, Relation rel, const std::string& seed_text,
                                      const std::string& completion, Generated* raw = nullptr) {
  const auto& t = builtin_template(n);
  ScriptedModel m;
  m.add(t.render({{"claim", seed_text}}), {completion, std::nullopt, {}});
  Statement seed{"0", seed_text, StatementKind::Seed, std::nullopt, Origin::External, std::nullopt};
  const Generated g = n == TemplateName::CorrelativeImplication ? generate_correlative(m, seed, t, {})
                      : n == TemplateName::RelatedClaims        ? generate_related(m, seed, t, {})
                                                                : generate_children(m, seed, rel, t, {});
  if (raw) *raw = g;
  std::vector<std::string> out;
  for (const auto& s : g.statements) out.push_back(s.text);
  return out;
}

}  // namespace

TEST(TemplateRoundTrip, Implication) {
  const auto& b = builtin_template(TemplateName::Implication).body;
  const auto got = run_children(TemplateName::Implication, Relation::Implies,
                                "Cleopatra was the last active ruler of the Ptolemaic Kingdom of Egypt between 51 to 30 BC.",
                                section(b, "Logical implications:", "\n\nClaim: {claim}"));
  EXPECT_EQ(got, (std::vector<std::string>{"Cleopatra was one of the rulers of the Ptolemaic Kingdom of Egypt.",
                                           "Egypt had a female ruler during the Ptolemaic Kingdom age.",
                                           "Ptolemaic Kingdom of Egypt ended on 30 BC."}));
}

TEST(TemplateRoundTrip, ImplicationMquake) {
  const auto& b = builtin_template(TemplateName::ImplicationMquake).body;
  const auto got = run_children(TemplateName::ImplicationMquake, Relation::Implies,
                                "Stephen Hawking was born and raised in Russia.",
                                section(b, "Logical implications:", "\n\nClaim: {claim}"));
  EXPECT_EQ(got, (std::vector<std::string>{
                     "Stephen Hawking has knowledge of Russian language.",
                     "The head of the country where Stephen Hawking was born is Vladimir Putin.",
                     "The country where Stephen Hawking was born is Russia.",
                     "Stephen Hawking is a Russian citizen and has a Russian passport.",
                     "The city where Stephen Hawking was born is in Russia."}));
}

TEST(TemplateRoundTrip, Correlative) {
  const auto& b = builtin_template(TemplateName::CorrelativeImplication).body;
  Generated g;
  const auto got = run_children(TemplateName::CorrelativeImplication, Relation::Implies,
                                "Stephen Hawking was born and raised in Russia.",
                                section(b, "Related Facts:", "\n\nMain Claim: {claim}"), &g);
  EXPECT_EQ(got, (std::vector<std::string>{
                     "Stephen Hawking has knowledge of Russian language.",
                     "The head of the country where Stephen Hawking was born is Vladimir Putin.",
                     "The country where Stephen Hawking was born is on the continents of Europe and Asia.",
                     "The capital of Stephen Hawking's home country is Moscow.",
                     "Stephen Hawking has used Russian ruble growing up."}));
  EXPECT_EQ(g.related_facts, (std::vector<std::string>{"The language of Russia is Russian.",
                                                      "The head of Russia is Vladimir Putin.",
                                                      "Russia is on the continents of Asia and Europe.",
                                                      "The capital of Russia is Moscow.",
                                                      "The currency of Russia is Russian ruble."}));
  for (const auto& s : g.statements) EXPECT_EQ(s.kind, StatementKind::Implication);
}

TEST(TemplateRoundTrip, Contradiction) {
  const auto& b = builtin_template(TemplateName::Contradiction).body;
  const auto got = run_children(TemplateName::Contradiction, Relation::Contradicts,
                                "Cleopatra was the last active ruler of the Ptolemaic Kingdom of Egypt between 51 to 30 BC.",
                                section(b, "Similar but contradicting claims:", "\n\nClaim: {claim}"));
  EXPECT_EQ(got, (std::vector<std::string>{
                     "Cleopatra was the first active ruler of the Ptolemaic Kingdom of Egypt.",
                     "Cleopatra was the last active ruler of the Ptolemaic Kingdom of Egypt between 51 to 30 AD.",
                     "Cleopatra was the daughter of the last active ruler of the Ptolemaic Kingdom of Egypt."}));
}

TEST(TemplateRoundTrip, Related) {
  const auto& b = builtin_template(TemplateName::RelatedClaims).body;
  const auto got = run_children(
      TemplateName::RelatedClaims, Relation::Implies,
      "Neil Armstrong and Buzz Aldrin became the first humans to land on the Mars.",
      section(b, "Related Correct Facts:", "\nClaim (may be true or false): {claim}"));
  EXPECT_EQ(got, (std::vector<std::string>{"Apollo 11 was the first manned mission to land on the moon.",
                                           "Neil Armstrong was the first person to step on the moon.",
                                           "No human has been to Mars yet.",
                                           "Neil Armstrong and Buzz Aldrin were the first humans to land on the moon.",
                                           "Neil Armstrong and Buzz Aldrin were the first humans to walk on the moon."}));
}

TEST(TemplateRoundTrip, SeedClaims) {
  const auto& t = builtin_template(TemplateName::SeedClaims);
  ScriptedModel m;
  m.add(t.render({}), {" The sky is blue.\n2. Grass is green.", std::nullopt, {}});
  const auto g = generate_seed_claims(m, t, 1, 10, {});
  ASSERT_EQ(g.statements.size(), 2U);
  EXPECT_EQ(g.statements[0].text, "The sky is blue.");
  EXPECT_EQ(g.statements[1].text, "Grass is green.");
}

TEST(TemplateRoundTrip, DoubleCheckVerdicts) {
  const auto templates = TemplateSet::builtin();
  struct Case {
    TemplateName name;
    std::string a, b, discussion;
    bool keep;
  };
  const auto& imp = builtin_template(TemplateName::DoubleCheckImplication).body;
  const auto& con = builtin_template(TemplateName::DoubleCheckContradiction).body;
  const std::vector<Case> cases = {
      {TemplateName::DoubleCheckImplication, "The tallest building in the world is taller than 800 metres.",
       "The tallest building in the world is taller than 700 metres.",
       section(imp, "taller than 700 metres.\nDiscussion:", "\n\nOrange"), true},
      {TemplateName::DoubleCheckImplication, "Orange is a fruit.", "Orange is an apple.",
       section(imp, "Orange is an apple.\nDiscussion:", "\n\n{claim1}"), false},
      {TemplateName::DoubleCheckContradiction, "The tallest building in the world is taller than 800 metres.",
       "The tallest building in the world is shorter than 1000 metres.",
       section(con, "shorter than 1000 metres.\nReasoning:", "\n\nClaim 1: Orange"), false},
      {TemplateName::DoubleCheckContradiction, "Orange is a fruit.", "Orange is a vegetable.",
       section(con, "Orange is a vegetable.\nReasoning:", "\n\nClaim 1: {claim1}"), true},
  };
  for (const auto& c : cases) {
    ScriptedModel m;
    m.add(builtin_template(c.name).render({{"claim1", c.a}, {"claim2", c.b}}), {c.discussion, std::nullopt, {}});
    const bool implication = c.name == TemplateName::DoubleCheckImplication;
    Statement seed{"0", c.a, StatementKind::Seed, std::nullopt, Origin::External, std::nullopt};
    Statement child{"0.1", c.b, implication ? StatementKind::Implication : StatementKind::Contradiction, "0",
                    Origin::LmSampled, std::nullopt};
    const auto v = double_check(m, templates, seed, child, 0.5, {});
    EXPECT_EQ(v.keep, c.keep) << c.b;
    EXPECT_FALSE(v.warning);
  }
}

TEST(TemplateRoundTrip, TruthValueLabels) {
  const auto& t = builtin_template(TemplateName::TruthValue);
  const std::vector<std::pair<std::string, bool>> exemplars = {
      {"World War II began in 1965.", false},
      {"Alan Alda is an actor.", true},
      {"The moon is made of obsidian.", false},
      {"There are approximately 30 million people in the United States.", false},
      {"Dracula was written by Bram Stoker.", true},
  };
  for (const auto& [claim, label] : exemplars) {
    const std::string line = claim + " Label: " + (label ? "true" : "false");
    ASSERT_NE(t.body.find(line), std::string::npos) << line;
    // The exemplar's label word, as the one generated token.
    const std::string token = " " + line.substr(line.rfind(' ') + 1);
    ScriptedModel m;
    m.add(t.render({{"claim", claim}}), {token, std::vector<TokenLogprob>{{token, -0.05}},
                                         {{{token, -0.05}, {label ? " false" : " true", -3.0}}}});
    EXPECT_EQ(truth_probability(m, claim, t.render({{"claim", claim}})).p_true > 0.5, label) << claim;
  }
}

TEST(TemplateRoundTrip, QaConversion) {
  const auto& t = builtin_template(TemplateName::QaConversion);
  const std::vector<std::pair<std::string, std::string>> exemplars = {
      {"Kate Winslet is a citizen of the UK.", "Which country is Kate Winslet a citizen of?"},
      {"Ukraine is a country in Europe.", "Which continent is Ukraine in?"},
      {"The country where Priyanka Chopra is from is India. The capital of India is New Delhi.",
       "What is the capital of the country where Priyanka Chopra is from?"},
  };
  for (const auto& [sentence, question] : exemplars) {
    ASSERT_NE(t.body.find("Sentence: " + sentence + "\nQuestion: " + question), std::string::npos);
    ScriptedModel m;
    m.add(t.render({{"sentence", sentence}}), {" " + question + "\nSentence: next", std::nullopt, {}});
    Statement s{"0", sentence, StatementKind::Seed, std::nullopt, Origin::External, std::nullopt};
    const auto qa = to_question(m, t, s, {});
    EXPECT_EQ(qa.question, question);
    EXPECT_EQ(qa.answer, sentence);
  }
}
