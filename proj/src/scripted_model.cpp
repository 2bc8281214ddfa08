#include "dct/scripted_model.hpp"

#include <fstream>

#include "dct/hash.hpp"

namespace dct {

using nlohmann::json;

std::string ScriptedModel::fingerprint(std::string_view prompt) { return sha256_hex(prompt); }

void ScriptedModel::add(std::string_view prompt, CompletionResult response) {
  add_fingerprint(fingerprint(prompt), std::move(response));
}

void ScriptedModel::add_fingerprint(const std::string& fp, CompletionResult response) {
  std::lock_guard lock(*mu_);
  responses_[fp].push_back(std::move(response));
}

CompletionResult ScriptedModel::complete(std::string_view prompt, const SamplingParams& params) {
  if (prompt.empty()) throw ContractError("empty prompt");
  params.validate();
  const std::string fp = fingerprint(prompt);
  std::lock_guard lock(*mu_);
  ++calls_;
  const auto it = responses_.find(fp);
  if (it == responses_.end() || it->second.empty()) {
    const std::string head(prompt.substr(prompt.size() > 80 ? prompt.size() - 80 : 0));
    throw ScriptMissError("no scripted response for prompt " + fp.substr(0, 12) + " ending \"" + head + "\"");
  }
  std::size_t& k = served_[fp];
  CompletionResult r = it->second[std::min(k, it->second.size() - 1)];
  ++k;
  r.text = truncate_at_stop(r.text, params.stop_sequences);
  return r;
}

std::size_t ScriptedModel::calls() const {
  std::lock_guard lock(*mu_);
  return calls_;
}

std::size_t ScriptedModel::entries() const {
  std::lock_guard lock(*mu_);
  return responses_.size();
}

CompletionResult label_completion(double logprob_true, double logprob_false, const LabelTokens& labels) {
  CompletionResult r;
  const bool t = logprob_true >= logprob_false;
  const std::string chosen = " " + (t ? labels.true_label : labels.false_label);
  r.text = chosen;
  r.token_logprobs = std::vector<TokenLogprob>{{chosen, t ? logprob_true : logprob_false}};
  r.top_logprobs = {{{" " + labels.true_label, logprob_true}, {" " + labels.false_label, logprob_false}}};
  return r;
}

CompletionResult scripted_response_from_json(const json& r) {
  if (r.is_string()) return CompletionResult{r.get<std::string>(), std::nullopt, {}};
  if (r.contains("label_logprobs")) {
    const auto& l = r["label_logprobs"];
    return label_completion(l.at("true").get<double>(), l.at("false").get<double>());
  }
  CompletionResult out;
  out.text = r.value("text", "");
  if (r.contains("tokens")) {
    std::vector<TokenLogprob> toks;
    for (const auto& t : r["tokens"]) toks.push_back({t.at("token").get<std::string>(), t.at("logprob").get<double>()});
    out.token_logprobs = std::move(toks);
  }
  if (r.contains("top_logprobs")) {
    for (const auto& pos : r["top_logprobs"]) {
      std::vector<TokenLogprob> alts;
      for (const auto& [tok, v] : pos.items()) alts.push_back({tok, v.get<double>()});
      out.top_logprobs.push_back(std::move(alts));
    }
  }
  auto check = [](const TokenLogprob& t) {
    if (t.logprob > 0.0) throw ContractError("scripted log-probability above zero for token '" + t.token + "'");
  };
  if (out.token_logprobs)
    for (const auto& t : *out.token_logprobs) check(t);
  for (const auto& pos : out.top_logprobs)
    for (const auto& a : pos) check(a);
  return out;
}

ScriptedModel ScriptedModel::from_json(const json& script, const TemplateSet& templates) {
  ScriptedModel m;
  for (const auto& e : script.at("entries")) {
    std::string fp;
    if (e.contains("fingerprint")) {
      fp = e["fingerprint"].get<std::string>();
    } else if (e.contains("prompt")) {
      fp = fingerprint(e["prompt"].get<std::string>());
    } else if (e.contains("template")) {
      const auto name = parse_template_name(e["template"].get<std::string>());
      std::map<std::string, std::string> vars;
      if (e.contains("vars")) vars = e["vars"].get<std::map<std::string, std::string>>();
      fp = fingerprint(templates.get(name).render(vars));
    } else {
      throw ContractError("script entry needs a prompt, fingerprint or template key");
    }
    if (e.contains("responses")) {
      for (const auto& r : e["responses"]) m.add_fingerprint(fp, scripted_response_from_json(r));
    } else {
      m.add_fingerprint(fp, scripted_response_from_json(e.at("response")));
    }
  }
  return m;
}

ScriptedModel ScriptedModel::from_file(const std::filesystem::path& path, const TemplateSet& templates) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read mock script " + path.string());
  return from_json(json::parse(in), templates);
}

}  // namespace dct
