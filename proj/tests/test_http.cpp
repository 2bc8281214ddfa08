#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "dct/http_client.hpp"

using namespace dct;
using nlohmann::json;

namespace {

// In-process completions server on an ephemeral port.
class Server {
 public:
  explicit Server(httplib::Server::Handler handler) {
    srv_.Post("/v1/completions", std::move(handler));
    port_ = srv_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { srv_.listen_after_bind(); });
    srv_.wait_until_ready();
  }
  ~Server() {
    srv_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server srv_;
  int port_ = 0;
  std::thread thread_;
};

EndpointSettings settings_for(const std::string& url) {
  EndpointSettings s;
  s.base_url = url;
  s.model = "tiny";
  s.initial_backoff = std::chrono::milliseconds(5);
  s.timeout = std::chrono::seconds(5);
  return s;
}

json completion(const std::string& text) { return {{"choices", {{{"text", text}}}}}; }

}  // namespace

TEST(Http, WireFormat) {
  json seen;
  std::string auth;
  Server server([&](const httplib::Request& req, httplib::Response& res) {
    seen = json::parse(req.body);
    auth = req.get_header_value("Authorization");
    res.set_content(completion("1. A\n2. B").dump(), "application/json");
  });
  auto s = settings_for(server.url());
  s.token = "secret";
  HttpCompletionClient client(s);
  SamplingParams p;
  p.stop_sequences = {"\n\n"};
  const auto r = client.complete("List things.", p);
  EXPECT_EQ(r.text, "1. A\n2. B");
  EXPECT_EQ(seen["model"], "tiny");
  EXPECT_EQ(seen["prompt"], "List things.");
  EXPECT_DOUBLE_EQ(seen["temperature"].get<double>(), 0.6);
  EXPECT_DOUBLE_EQ(seen["top_p"].get<double>(), 0.9);
  EXPECT_EQ(seen["max_tokens"], 256);
  EXPECT_EQ(seen["stop"], json::array({"\n\n"}));
  EXPECT_TRUE(seen.contains("logprobs"));
  EXPECT_EQ(auth, "Bearer secret");
}

TEST(Http, StopSequenceNeverLeaks) {
  Server server([](const httplib::Request&, httplib::Response& res) {
    res.set_content(completion("1. A\n\nClaim: next").dump(), "application/json");
  });
  HttpCompletionClient client(settings_for(server.url()));
  SamplingParams p;
  p.stop_sequences = {"\n\n"};
  const auto r = client.complete("x", p);
  EXPECT_EQ(r.text.find("\n\n"), std::string::npos);
  EXPECT_EQ(r.text, "1. A");
}

TEST(Http, ParsesLogprobs) {
  Server server([](const httplib::Request&, httplib::Response& res) {
    const json body = {{"choices",
                        {{{"text", " true"},
                          {"logprobs",
                           {{"tokens", {" true"}},
                            {"token_logprobs", {-0.2}},
                            {"top_logprobs", {{{" true", -0.2}, {" false", -1.8}}}}}}}}}};
    res.set_content(body.dump(), "application/json");
  });
  HttpCompletionClient client(settings_for(server.url()));
  const auto t = truth_probability(client, "s", "Label:");
  EXPECT_NEAR(t.p_true, two_way_softmax(-0.2, -1.8), 1e-15);
}

TEST(Http, RetriesServerErrorsThenSucceeds) {
  std::atomic<int> hits{0};
  Server server([&](const httplib::Request&, httplib::Response& res) {
    if (++hits < 3) {
      res.status = 503;
      return;
    }
    res.set_content(completion("ok").dump(), "application/json");
  });
  HttpCompletionClient client(settings_for(server.url()));
  EXPECT_EQ(client.complete("x", {}).text, "ok");
  EXPECT_EQ(hits.load(), 3);
}

TEST(Http, ClientErrorsAreNotRetried) {
  std::atomic<int> hits{0};
  Server server([&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.status = 400;
    res.set_content("bad request", "text/plain");
  });
  HttpCompletionClient client(settings_for(server.url()));
  EXPECT_THROW(client.complete("x", {}), Error);
  EXPECT_EQ(hits.load(), 1);
}

TEST(Http, UnreachableEndpointReportsAttempts) {
  // Bind then release a port so nothing listens on it.
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  auto s = settings_for("http://127.0.0.1:" + std::to_string(port));
  s.timeout = std::chrono::seconds(1);
  HttpCompletionClient client(s);
  const auto start = std::chrono::steady_clock::now();
  try {
    client.complete("x", {});
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.attempts(), 3);
  }
  // Backoff doubles: 5 ms + 10 ms between the three attempts.
  EXPECT_GE(std::chrono::steady_clock::now() - start, std::chrono::milliseconds(15));
}

TEST(Http, MalformedResponseIsAnError) {
  EXPECT_THROW(parse_completion_response(R"({"choices": []})"), Error);
  EXPECT_THROW(parse_completion_response(
                   R"({"choices": [{"text": "x", "logprobs": {"tokens": ["x"], "token_logprobs": [0.5]}}]})"),
               Error);
}

TEST(Http, EnvironmentOverrides) {
  ::setenv("DCT_LM_ENDPOINT", "http://example.invalid:9", 1);
  ::setenv("DCT_LM_MODEL", "m", 1);
  ::setenv("DCT_LM_TOKEN", "t", 1);
  EndpointSettings s;
  s.apply_environment();
  EXPECT_EQ(s.base_url, "http://example.invalid:9");
  EXPECT_EQ(s.model, "m");
  EXPECT_EQ(s.token, "t");
  ::unsetenv("DCT_LM_ENDPOINT");
  ::unsetenv("DCT_LM_MODEL");
  ::unsetenv("DCT_LM_TOKEN");
}

TEST(Http, BoundedInFlight) {
  std::atomic<int> active{0}, peak{0};
  Server server([&](const httplib::Request&, httplib::Response& res) {
    const int now = ++active;
    int prev = peak.load();
    while (now > prev && !peak.compare_exchange_weak(prev, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(30));
    --active;
    res.set_content(completion("ok").dump(), "application/json");
  });
  auto s = settings_for(server.url());
  s.max_in_flight = 2;
  HttpCompletionClient client(s);
  {
    std::vector<std::jthread> pool;
    for (int i = 0; i < 6; ++i) pool.emplace_back([&] { client.complete("x", {}); });
  }
  EXPECT_LE(peak.load(), 2);
}
