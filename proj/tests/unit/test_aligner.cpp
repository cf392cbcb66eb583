#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "mtgb/aligner.hpp"
#include "mtgb/error.hpp"
#include "mtgb/text.hpp"
#include "support/oracles.hpp"

using namespace mtgb;

namespace {

using Corpus = std::vector<std::pair<oracle::Sentence, oracle::Sentence>>;

ParallelCorpus build(const Corpus& c) {
  ParallelCorpus pc;
  for (const auto& [s, t] : c) pc.add(s, t);
  return pc;
}

void check_against_enumeration(const AlignerModel& model, const ParallelCorpus& pc, const Corpus& c) {
  const auto mine = expected_counts(model, pc);
  const auto ref = oracle::enumerate_counts(model, c);
  CHECK(mine.log_likelihood == doctest::Approx(ref.log_likelihood).epsilon(1e-12));
  std::size_t seen = 0;
  for (std::uint32_t s = 0; s < mine.counts.size(); ++s) {
    for (const auto& [t, v] : mine.counts[s]) {
      const auto key = std::make_pair(pc.source_vocab().word(s), pc.target_vocab().word(t));
      const auto it = ref.counts.find(key);
      REQUIRE(it != ref.counts.end());
      CHECK(std::abs(v - it->second) <= 1e-10);
      ++seen;
    }
  }
  CHECK(seen == ref.counts.size());
}

// A corpus whose target is a token-wise renaming of the source.
Corpus renaming_corpus(std::mt19937_64& rng, std::size_t pairs, std::size_t vocab) {
  std::uniform_int_distribution<std::size_t> len(2, 8);
  std::uniform_int_distribution<std::size_t> word(0, vocab - 1);
  Corpus c;
  for (std::size_t k = 0; k < pairs; ++k) {
    oracle::Sentence s;
    oracle::Sentence t;
    const auto n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
      const auto w = word(rng);
      s.push_back("s" + std::to_string(w));
      t.push_back("t" + std::to_string(w));
    }
    c.emplace_back(s, t);
  }
  return c;
}

}  // namespace

TEST_SUITE("aligner") {

TEST_CASE("distortion rows are distributions with p0 on NULL") {
  for (std::size_t m : {1u, 3u, 7u}) {
    for (std::size_t n : {1u, 4u, 9u}) {
      for (std::size_t j = 0; j < m; ++j) {
        const auto row = distortion_row(j, m, n, 4.0, 0.08);
        REQUIRE(row.size() == n + 1);
        CHECK(row[0] == doctest::Approx(0.08));
        double sum = 0.0;
        for (double v : row) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 1; i <= n; ++i) {
          CHECK(row[i] == doctest::Approx(oracle::prior(i, j, m, n, 4.0, 0.08)).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("expected counts equal exhaustive enumeration") {
  const Corpus c{{{"a", "b"}, {"x", "y"}},
                 {{"a", "c", "b"}, {"x", "z", "y", "y"}},
                 {{"c"}, {"z", "x"}},
                 {{"b", "a", "c", "a"}, {"y", "x", "z"}},
                 {{"d", "a"}, {"w", "x", "x", "y"}}};
  const auto pc = build(c);
  for (double lambda : {0.0, 1.5, 4.0}) {
    auto model = uniform_model(pc, {lambda, 0.08, 1});
    for (int it = 0; it < 4; ++it) {
      check_against_enumeration(model, pc, c);
      em_step(model, pc);
    }
  }
}

TEST_CASE("rows stay stochastic and log-likelihood never decreases") {
  std::mt19937_64 rng(11);
  auto c = renaming_corpus(rng, 60, 25);
  // scramble some targets so the corpus is not a clean renaming
  for (std::size_t k = 0; k < c.size(); k += 3) std::shuffle(c[k].second.begin(), c[k].second.end(), rng);
  const auto pc = build(c);
  const auto model = train(pc, {4.0, 0.08, 10});
  const auto& ll = model.log_likelihoods();
  REQUIRE(ll.size() == 10);
  for (std::size_t k = 1; k < ll.size(); ++k) CHECK(ll[k] >= ll[k - 1] - 1e-9);
  for (std::uint32_t s = 0; s < model.rows(); ++s) {
    double sum = 0.0;
    for (const auto& [t, v] : model.row(s)) sum += v;
    if (!model.row(s).empty()) CHECK(std::abs(sum - 1.0) <= 1e-9);
  }
}

TEST_CASE("two-type corpus converges") {
  Corpus c;
  for (int k = 0; k < 10; ++k) {
    c.push_back({{"a"}, {"x"}});
    c.push_back({{"b"}, {"y"}});
  }
  const auto pc = build(c);
  const auto model = train(pc, {});
  const auto a = *pc.source_vocab().find("a");
  const auto b = *pc.source_vocab().find("b");
  CHECK(model.translation_prob(a, *pc.target_vocab().find("x")) > 0.99);
  CHECK(model.translation_prob(b, *pc.target_vocab().find("y")) > 0.99);
}

TEST_CASE("single one-token pair") {
  const auto pc = build({{{"a"}, {"x"}}});
  const auto model = train(pc, {4.0, 0.08, 1});
  CHECK(model.translation_prob(*pc.source_vocab().find("a"), *pc.target_vocab().find("x")) == doctest::Approx(1.0));
  const std::vector<std::string> s{"a"};
  const std::vector<std::string> t{"x"};
  CHECK(to_pharaoh(viterbi_align(model, s, t).links) == "0-0");
}

TEST_CASE("diagonal tension raises likelihood on a monotone corpus") {
  std::mt19937_64 rng(3);
  const auto c = renaming_corpus(rng, 80, 30);
  const auto pc = build(c);
  const auto flat = train(pc, {0.0, 0.08, 5});
  const auto diag = train(pc, {4.0, 0.08, 5});
  for (std::uint32_t s = 0; s < flat.rows(); ++s) {
    CHECK(flat.row(s).size() == diag.row(s).size());
  }
  CHECK(diag.log_likelihoods().back() > flat.log_likelihoods().back());
}

TEST_CASE("bijective renaming is aligned perfectly") {
  std::mt19937_64 rng(5);
  const auto c = renaming_corpus(rng, 200, 40);
  const auto pc = build(c);
  const auto model = train(pc, {4.0, 0.08, 5});
  std::size_t correct = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
  for (const auto& [s, t] : c) {
    const auto links = viterbi_align(model, s, t).links;
    predicted += links.size();
    gold += s.size();
    for (const auto& l : links) correct += s[l.source_index].substr(1) == t[l.target_index].substr(1) &&
                                           l.source_index == l.target_index;
  }
  CHECK(correct == gold);
  CHECK(predicted == gold);
}

TEST_CASE("monotone toy pair aligns on the diagonal") {
  Corpus c;
  for (int k = 0; k < 5; ++k) {
    c.push_back({{"a", "b", "c"}, {"x", "y", "z"}});
    c.push_back({{"a", "c"}, {"x", "z"}});
    c.push_back({{"b"}, {"y"}});
  }
  const auto pc = build(c);
  const auto model = train(pc, {});
  const std::vector<std::string> s{"a", "b", "c"};
  const std::vector<std::string> t{"x", "y", "z"};
  CHECK(to_pharaoh(viterbi_align(model, s, t).links) == "0-0 1-1 2-2");
}

TEST_CASE("unknown target words fall back to distortion") {
  const auto pc = build({{{"a", "b"}, {"x", "y"}}});
  const auto model = train(pc, {});
  const std::vector<std::string> s{"a", "b"};
  const std::vector<std::string> t{"x", "q"};
  const auto v = viterbi_align(model, s, t);
  CHECK(v.oov_positions == std::vector<std::size_t>{1});
  CHECK(to_pharaoh(v.links) == "0-0 1-1");
}

TEST_CASE("NULL-dominant positions produce no link") {
  const auto pc = build({{{"a"}, {"x"}}});
  auto model = train(pc, {4.0, 0.99, 1});
  const std::vector<std::string> s{"z"};
  const std::vector<std::string> t{"x"};
  // source OOV: theta is zero for the only real position, NULL wins
  CHECK(viterbi_align(model, s, t).links.empty());
}

TEST_CASE("precondition failures") {
  ParallelCorpus empty;
  CHECK_THROWS_AS(train(empty, {}), ValidationError);
  const auto pc = build({{{"a"}, {"x"}}});
  CHECK_THROWS_AS(train(pc, {4.0, 0.0, 5}), ValidationError);
  CHECK_THROWS_AS(train(pc, {4.0, 1.0, 5}), ValidationError);
  CHECK_THROWS_AS(train(pc, {4.0, 0.08, 0}), ValidationError);
  CHECK_THROWS_AS(train(pc, {-1.0, 0.08, 5}), ValidationError);
  ParallelCorpus bad;
  const std::vector<std::string> none;
  const std::vector<std::string> one{"a"};
  CHECK_THROWS_AS(bad.add(none, one), ValidationError);
}

TEST_CASE("project_entity and Pharaoh format") {
  const std::vector<AlignmentLink> links{{1, 3}, {1, 2}, {0, 0}};
  CHECK(project_entity(links, 1) == std::set<std::size_t>{2, 3});
  CHECK(project_entity(links, 5).empty());
  CHECK(to_pharaoh(links) == "0-0 1-2 1-3");
  CHECK(parse_pharaoh("0-0 1-2 1-3") == std::vector<AlignmentLink>{{0, 0}, {1, 2}, {1, 3}});
  CHECK(parse_pharaoh("").empty());
  CHECK_THROWS_AS(parse_pharaoh("0-x"), ValidationError);
}

TEST_CASE("minimal pair translations align librarian to its Italian noun") {
  // On repeated pairs alone the diagonal prior and the rare pronoun win over
  // the noun; dictionary pairs supply lexical evidence, as an extra parallel
  // corpus would.
  Corpus c;
  for (int k = 0; k < 4; ++k) {
    c.push_back({{"librarian"}, {"bibliotecaria"}});
    c.push_back({{"librarian"}, {"bibliotecario"}});
    c.push_back({{"with"}, {"con"}});
    c.push_back({{"the"}, {"la"}});
    c.push_back({{"the"}, {"il"}});
    c.push_back({{"she"}, {"lei"}});
    c.push_back({{"he"}, {"lui"}});
  }
  const auto f = text::alignment_tokens("The analyst consulted with the librarian because she knows a lot about books.", false);
  const auto m = text::alignment_tokens("The analyst consulted with the librarian because he knows a lot about books.", false);
  const auto tf = text::alignment_tokens("L'analista si è consultata con la bibliotecaria perché sa molto di libri.");
  const auto tm = text::alignment_tokens("L'analista si è consultato con il bibliotecario perché sa molto di libri.");
  for (int k = 0; k < 3; ++k) {
    c.push_back({f, tf});
    c.push_back({m, tm});
  }
  const auto model = train(build(c), {});
  CHECK(project_entity(viterbi_align(model, f, tf).links, 5) == std::set<std::size_t>{7});
  CHECK(project_entity(viterbi_align(model, m, tm).links, 5) == std::set<std::size_t>{7});
}

}
