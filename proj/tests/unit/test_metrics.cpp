#include <doctest.h>

#include <random>

#include "mtgb/error.hpp"
#include "mtgb/metrics.hpp"
#include "support/oracles.hpp"

using namespace mtgb;

namespace {

GenderOutcome out(const std::string& id, Gender g, GenderLabel l) { return GenderOutcome::make(id, g, l); }

void check_ratio(const Ratio& r, oracle::Fraction f) {
  CHECK(r.count == f.count);
  CHECK(r.total == f.total);
  if (f.total > 0) CHECK(*r.tenths() == oracle::tenths(f));
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("rounding to tenths is half up") {
  CHECK(Ratio{1, 3}.formatted() == "33.3%");
  CHECK(Ratio{2, 3}.formatted() == "66.7%");
  CHECK(Ratio{1, 8}.formatted() == "12.5%");
  CHECK(Ratio{1, 16}.formatted() == "6.3%");
  CHECK(Ratio{44, 90}.formatted() == "48.9%");
  CHECK(Ratio{0, 5}.formatted() == "0.0%");
  CHECK(Ratio{5, 5}.formatted() == "100.0%");
  CHECK(Ratio{0, 0}.formatted() == "absent");
  CHECK_FALSE(Ratio{0, 0}.percent());
}

TEST_CASE("standard accuracy counts Unknown as an error") {
  const std::vector<GenderOutcome> o{out("1", Gender::Male, GenderLabel::Masculine),
                                     out("2", Gender::Female, GenderLabel::Unknown),
                                     out("3", Gender::Female, GenderLabel::Feminine),
                                     out("4", Gender::Male, GenderLabel::Feminine)};
  const auto a = standard_accuracy(o);
  CHECK(a.overall == Ratio{2, 4});
  CHECK(a.masculine == Ratio{1, 2});
  CHECK(a.feminine == Ratio{1, 2});
  CHECK(unknown_rate(o) == Ratio{1, 4});
}

TEST_CASE("precondition errors") {
  CHECK_THROWS_AS(standard_accuracy({}), ValidationError);
  const std::vector<GenderOutcome> neutral{out("1", Gender::Neutral, GenderLabel::Masculine)};
  CHECK_THROWS_AS(standard_accuracy(neutral), ValidationError);
  const std::vector<GenderOutcome> gendered{out("1", Gender::Male, GenderLabel::Masculine)};
  CHECK_THROWS_AS(prior_bias(gendered), ValidationError);
  const std::vector<GenderOutcome> blind{out("1", Gender::Neutral, GenderLabel::Unknown)};
  CHECK_THROWS_AS(prior_bias(blind), ValidationError);
  const std::vector<PairIds> pairs{{0, "1", "9", ProfessionStereotype::ProF}};
  try {
    minimal_pair_accuracy(pairs, index_outcomes(gendered));
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("9") != std::string::npos);
  }
  CHECK_THROWS_AS(index_outcomes(std::vector<GenderOutcome>{gendered[0], gendered[0]}), ValidationError);
}

TEST_CASE("minimal pair accuracy and stereotype shares") {
  const std::vector<GenderOutcome> o{
      out("1", Gender::Male, GenderLabel::Masculine), out("2", Gender::Female, GenderLabel::Feminine),
      out("3", Gender::Male, GenderLabel::Masculine), out("4", Gender::Female, GenderLabel::Masculine),
      out("5", Gender::Male, GenderLabel::Masculine), out("6", Gender::Female, GenderLabel::Feminine)};
  const std::vector<PairIds> p{{0, "1", "2", ProfessionStereotype::ProF},
                               {0, "3", "4", ProfessionStereotype::ProF},
                               {0, "5", "6", ProfessionStereotype::ProM}};
  const auto m = minimal_pair_accuracy(p, index_outcomes(o));
  CHECK(m.mpa == Ratio{2, 3});
  CHECK(m.pro_f == Ratio{1, 2});
  CHECK(m.pro_m == Ratio{1, 2});
  CHECK(m.accurate_pairs == std::vector<std::size_t>{0, 2});
  const auto none = minimal_pair_accuracy({}, index_outcomes(o));
  CHECK(none.pro_f.formatted() == "absent");
}

TEST_CASE("prior bias excludes Unknown") {
  const std::vector<GenderOutcome> o{out("1", Gender::Neutral, GenderLabel::Masculine),
                                     out("2", Gender::Neutral, GenderLabel::Masculine),
                                     out("3", Gender::Neutral, GenderLabel::Feminine),
                                     out("4", Gender::Neutral, GenderLabel::Unknown)};
  const auto pb = prior_bias(o);
  CHECK(pb.masculine == Ratio{2, 3});
  CHECK(pb.feminine == Ratio{1, 3});
  CHECK(pb.unknown == 1);
}

TEST_CASE("machine format lists counts after each percentage") {
  MetricsReport r;
  r.unknown = Ratio{1, 3};
  r.prior = PriorBias{{2, 2}, {0, 2}, 2, 1};
  CHECK(r.to_machine() ==
        "unknown_rate=33.3\nunknown_rate.count=1\nunknown_rate.total=3\n"
        "prior_masc=100.0\nprior_masc.count=2\nprior_masc.total=2\n"
        "prior_fem=0.0\nprior_fem.count=0\nprior_fem.total=2\nprior_unknown.count=1\n");
  CHECK(r.to_table().find("33.3%") != std::string::npos);
}

TEST_CASE("random populations agree with a brute-force recount") {
  std::mt19937_64 rng(20251018);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pop = oracle::random_population(rng, 200);
    const auto ref = oracle::recount(pop);
    const auto acc = standard_accuracy(pop.outcomes);
    check_ratio(acc.overall, ref.overall);
    check_ratio(acc.masculine, ref.masc);
    check_ratio(acc.feminine, ref.fem);
    check_ratio(unknown_rate(pop.outcomes), ref.unknown);
    const auto m = minimal_pair_accuracy(pop.pairs, index_outcomes(pop.outcomes));
    check_ratio(m.mpa, ref.mpa);
    check_ratio(m.pro_f, ref.pro_f);
    check_ratio(m.pro_m, ref.pro_m);
    // dominance: mpa <= min(masc, fem), compared as exact fractions
    CHECK(m.mpa.count * acc.masculine.total <= acc.masculine.count * m.mpa.total);
    CHECK(m.mpa.count * acc.feminine.total <= acc.feminine.count * m.mpa.total);

    const auto neutral = oracle::random_neutral(rng, 200);
    const auto nref = oracle::recount_neutral(neutral);
    if (nref.prior_m.total == 0) {
      CHECK_THROWS_AS(prior_bias(neutral), ValidationError);
      continue;
    }
    const auto pb = prior_bias(neutral);
    check_ratio(pb.masculine, nref.prior_m);
    check_ratio(pb.feminine, nref.prior_f);
    CHECK(pb.unknown == nref.prior_unknown);
  }
}

}
