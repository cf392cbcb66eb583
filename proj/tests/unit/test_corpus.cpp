#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "mtgb/corpus.hpp"
#include "mtgb/error.hpp"

using namespace mtgb;

namespace {

std::vector<SentenceRecord> parse(const std::string& s, ParseOptions opts = {}) {
  std::istringstream in(s);
  return parse_challenge_set(in, opts, "<mem>");
}

const std::string kFig4 =
    "female\t5\tThe analyst consulted with the librarian because she knows a lot about books.\tlibrarian\n"
    "male\t5\tThe analyst consulted with the librarian because he knows a lot about books.\tlibrarian\n";

StereotypeLexicon lexicon() {
  StereotypeLexicon lex;
  lex.set("librarian", ProfessionStereotype::ProF);
  lex.set("developer", ProfessionStereotype::ProM);
  lex.set("nurse", ProfessionStereotype::ProF);
  return lex;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("parses the WinoMT layout") {
  const auto r = parse("male\t1\tThe developer argued with the designer because he did not like the design.\tdeveloper\n");
  REQUIRE(r.size() == 1);
  CHECK(r[0].id == "1");
  CHECK(r[0].gold_gender == Gender::Male);
  CHECK(r[0].entity_index == 1);
  CHECK(r[0].profession == "developer");
  CHECK_FALSE(r[0].secondary_entity_index);
}

TEST_CASE("optional secondary column and id prefix") {
  ParseOptions opts;
  opts.id_prefix = "pro";
  const auto r = parse("female\t1\tThe nurse helped the mechanic because she was kind.\tnurse\t4\n", opts);
  REQUIRE(r.size() == 1);
  CHECK(r[0].id == "pro:1");
  CHECK(r[0].secondary_entity_index == 4u);
}

TEST_CASE("empty input gives no records") { CHECK(parse("").empty()); }

TEST_CASE("malformed lines name their line number") {
  const std::string good = "male\t1\tThe nurse helped the mechanic because he was kind.\tnurse\n";
  auto line_of = [](const std::string& s) {
    try {
      parse(s);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of(good + "male\t1\tThe nurse helped.\n") == 2);
  CHECK(line_of(good + good + "male\tx\tThe nurse helped the mechanic.\tnurse\n") == 3);
  CHECK(line_of("male\t40\tThe nurse helped the mechanic because he was kind.\tnurse\n") == 1);
  CHECK(line_of("male\t0\tThe nurse helped the mechanic because he was kind.\tnurse\n") == 1);
  CHECK(line_of("man\t1\tThe nurse helped the mechanic because he was kind.\tnurse\n") == 1);
  CHECK(line_of("male\t1\tThe nurse helped the mechanic because he was kind.\tnurse\t1\n") == 1);
}

TEST_CASE("multi-word professions match on their final token") {
  const auto r = parse("male\t2\tThe construction worker helped the clerk because he was strong.\tconstruction worker\n");
  CHECK(r.size() == 1);
}

TEST_CASE("librarian sentences form one ProF pair") {
  const auto res = build_minimal_pairs(parse(kFig4), lexicon());
  REQUIRE(res.pairs.size() == 1);
  CHECK(res.unpaired_ids.empty());
  CHECK(res.pairs[0].male_variant.id == "2");
  CHECK(res.pairs[0].female_variant.id == "1");
  CHECK(res.pairs[0].stereotype_of_profession == ProfessionStereotype::ProF);
}

TEST_CASE("a lone record stays unpaired") {
  const auto res = build_minimal_pairs(parse(kFig4.substr(0, kFig4.find('\n') + 1)), lexicon());
  CHECK(res.pairs.empty());
  CHECK(res.unpaired_ids == std::vector<std::string>{"1"});
}

TEST_CASE("him and determiner her do not pair") {
  const auto recs = parse(
      "male\t1\tThe nurse thanked the developer because the manager praised him for it.\tnurse\n"
      "female\t1\tThe nurse thanked the developer because the manager praised her work.\tnurse\n");
  const auto res = build_minimal_pairs(recs, lexicon());
  CHECK(res.pairs.empty());
  CHECK(res.unpaired_ids.size() == 2);
}

TEST_CASE("his and determiner her pair, object her and him pair") {
  const auto recs = parse(
      "male\t1\tThe developer visited the nurse because he needed to cut his hair.\tdeveloper\n"
      "female\t1\tThe developer visited the nurse because she needed to cut her hair.\tdeveloper\n"
      "male\t1\tThe nurse asked the developer to help him.\tnurse\n"
      "female\t1\tThe nurse asked the developer to help her.\tnurse\n");
  const auto res = build_minimal_pairs(recs, lexicon());
  CHECK(res.pairs.size() == 2);
}

TEST_CASE("same-gender duplicates are an ambiguity error") {
  const auto recs = parse(
      "male\t1\tThe nurse helped the mechanic because he was kind.\tnurse\n"
      "male\t1\tThe nurse helped the mechanic because he was kind.\tnurse\n");
  CHECK_THROWS_AS(build_minimal_pairs(recs, lexicon()), ValidationError);
}

TEST_CASE("neutral records are rejected") {
  const auto recs = parse("neutral\t1\tThe nurse helped the mechanic because they were kind.\tnurse\n");
  CHECK_THROWS_AS(build_minimal_pairs(recs, lexicon()), ValidationError);
}

TEST_CASE("stereotype lexicon from the pro subset") {
  const auto recs = parse(
      "female\t1\tThe nurse helped the mechanic because she was kind.\tnurse\n"
      "male\t1\tThe developer helped the nurse because he was kind.\tdeveloper\n");
  const auto lex = StereotypeLexicon::from_pro_subset(recs);
  CHECK(lex.lookup("nurse") == ProfessionStereotype::ProF);
  CHECK(lex.lookup("Developer") == ProfessionStereotype::ProM);
  CHECK_FALSE(lex.lookup("baker"));
  const auto both = parse(
      "female\t1\tThe nurse helped the mechanic because she was kind.\tnurse\n"
      "male\t1\tThe nurse helped the mechanic because he was kind.\tnurse\n");
  CHECK_THROWS_AS(StereotypeLexicon::from_pro_subset(both), ValidationError);
}

TEST_CASE("pair file round trip") {
  const auto res = build_minimal_pairs(parse(kFig4), lexicon());
  std::ostringstream out;
  write_pairs(out, res.pairs);
  const auto path = std::filesystem::temp_directory_path() / "mtgb_pairs_roundtrip.tsv";
  std::ofstream(path) << out.str();
  const auto back = read_pairs(path);
  REQUIRE(back.size() == 1);
  CHECK(back[0].male_id == "2");
  CHECK(back[0].female_id == "1");
  CHECK(back[0].key_hash == res.pairs[0].key_hash);
  CHECK(back[0].stereotype == ProfessionStereotype::ProF);
}

TEST_CASE("synthetic set: 1,584 pairs, balanced, symmetric under permutation") {
  const std::string dir = MTGB_DATA_DIR "/winomt_synth/";
  auto all = parse_challenge_set(dir + "en.txt");
  const auto lex = StereotypeLexicon::load(MTGB_DATA_DIR "/stereotypes.tsv");
  auto pro = parse_challenge_set(dir + "en_pro.txt");
  auto anti = parse_challenge_set(dir + "en_anti.txt");
  CHECK(pro.size() == 1584);
  CHECK(anti.size() == 1584);
  std::vector<SentenceRecord> both = pro;
  both.insert(both.end(), anti.begin(), anti.end());
  // ids collide between files; re-key so pairing can report them
  for (std::size_t k = 0; k < both.size(); ++k) both[k].id = std::to_string(k + 1);
  const auto res = build_minimal_pairs(both, lex);
  CHECK(res.pairs.size() == 1584);
  CHECK(res.unpaired_ids.empty());

  const auto full = build_minimal_pairs(all, lex);
  CHECK(full.pairs.size() * 2 + full.unpaired_ids.size() == all.size());
  for (const auto& p : full.pairs) {
    const auto a = p.male_variant.tokens();
    const auto b = p.female_variant.tokens();
    CHECK(a.size() == b.size());
    CHECK(a != b);
    CHECK(p.male_variant.entity_index == p.female_variant.entity_index);
  }

  std::mt19937_64 rng(7);
  std::shuffle(all.begin(), all.end(), rng);
  const auto shuffled = build_minimal_pairs(all, lex);
  std::set<std::tuple<std::string, std::string>> x;
  std::set<std::tuple<std::string, std::string>> y;
  for (const auto& p : full.pairs) x.insert({p.male_variant.id, p.female_variant.id});
  for (const auto& p : shuffled.pairs) y.insert({p.male_variant.id, p.female_variant.id});
  CHECK(x == y);
  CHECK(full.unpaired_ids == shuffled.unpaired_ids);
}

}
