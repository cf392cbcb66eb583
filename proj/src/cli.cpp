#include "mtgb/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mtgb/attention.hpp"
#include "mtgb/corpus.hpp"
#include "mtgb/dump.hpp"
#include "mtgb/error.hpp"
#include "mtgb/heatmap.hpp"
#include "mtgb/metrics.hpp"
#include "mtgb/neutralizer.hpp"
#include "mtgb/pipeline.hpp"
#include "mtgb/pronouns.hpp"
#include "mtgb/simd/kernels.hpp"
#include "mtgb/text.hpp"

namespace mtgb {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunConfig {
  std::string input;
  std::string pro;
  std::string translations;
  std::string alignments;
  std::string extra_parallel;
  std::string outcomes;
  std::string pairs;
  std::string stereotypes = MTGB_DATA_DIR "/stereotypes.tsv";
  std::string dumps;
  std::string lexicon = MTGB_DATA_DIR "/lexicon/it_professions.tsv";
  std::string articles = MTGB_DATA_DIR "/lexicon/it_articles.tsv";
  std::string rules;
  std::string out;
  std::string log;
  std::string id_prefix;
  double tension = 4.0;
  double null_prob = 0.08;
  int iterations = 5;
  std::size_t n_min = 195;
  std::string layers = "8-20";
  std::size_t probe_layer = 15;
  std::string cue_gender = "feminine";
  std::string scale;
  std::string format = "table";
};

// Counts, exclusions and decisions of one command, written as JSON.
class RunLog {
 public:
  explicit RunLog(std::string command) { j_["command"] = std::move(command); }
  void count(const std::string& key, std::size_t v) { j_["counts"][key] = v; }
  void ids(const std::string& key, const std::vector<std::string>& v) { j_["exclusions"][key] = v; }
  template <typename T>
  void decision(const std::string& key, const T& v) {
    j_["decisions"][key] = v;
  }
  std::string str() const { return j_.dump(1) + "\n"; }

 private:
  json j_;
};

struct Ctx {
  const RunConfig& cfg;
  std::ostream& out;
  std::ostream& err;
  RunLog log;
};

void require(const std::string& value, const std::string& flag) {
  if (value.empty()) throw ValidationError("missing required option " + flag);
  if (!fs::exists(value)) throw IoError(flag + ": no such file or directory: " + value);
}

void require_out(const std::string& value, const std::string& flag) {
  if (value.empty()) throw ValidationError("missing required option " + flag);
}

bool machine(const RunConfig& cfg) { return cfg.format == "machine"; }

std::vector<SentenceRecord> load_records(const RunConfig& cfg) {
  require(cfg.input, "--input");
  ParseOptions opts;
  opts.id_prefix = cfg.id_prefix;
  return parse_challenge_set(cfg.input, opts);
}

NeutralizationRules load_rules(const RunConfig& cfg) {
  if (cfg.rules.empty()) return NeutralizationRules::builtin();
  require(cfg.rules, "--rules");
  return NeutralizationRules::load(cfg.rules);
}

AlignerParams aligner_params(const RunConfig& cfg) {
  if (cfg.iterations < 1) throw ValidationError("--iterations must be at least 1");
  if (!(cfg.tension >= 0.0)) throw ValidationError("--tension must be non-negative");
  if (!(cfg.null_prob > 0.0 && cfg.null_prob < 1.0)) throw ValidationError("--null-prob must lie in (0, 1)");
  return {cfg.tension, cfg.null_prob, cfg.iterations};
}

LayerRange parse_layers(const std::string& s) {
  const auto dash = s.find('-');
  try {
    if (dash == std::string::npos) {
      const auto v = std::stoul(s);
      return {v, v};
    }
    return {std::stoul(s.substr(0, dash)), std::stoul(s.substr(dash + 1))};
  } catch (const std::exception&) {
    throw ValidationError("--layers expects FIRST-LAST, got '" + s + "'");
  }
}

std::optional<ColorScale> parse_scale(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument("no comma");
    ColorScale c{std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    if (!(c.hi > c.lo)) throw std::invalid_argument("empty interval");
    return c;
  } catch (const std::exception&) {
    throw ValidationError("--scale expects LO,HI with LO < HI, got '" + s + "'");
  }
}

void write_text(const std::string& path, const std::string& contents) { text::write_file(path, contents); }

void print_report(Ctx& ctx, const MetricsReport& report) {
  ctx.out << (machine(ctx.cfg) ? report.to_machine() : report.to_table());
}

// --- commands ----------------------------------------------------------------

int cmd_neutralize(Ctx& ctx) {
  const auto records = load_records(ctx.cfg);
  require_out(ctx.cfg.out, "--out");
  const auto rules = load_rules(ctx.cfg);
  std::vector<SentenceRecord> neutral;
  std::size_t rewritten = 0;
  std::size_t repaired = 0;
  std::vector<std::string> already;
  for (const auto& r : records) {
    auto res = neutralize(r, rules);
    if (res.warning) already.push_back(r.id);
    rewritten += res.rewritten.size();
    repaired += res.repaired.size();
    neutral.push_back(std::move(res.record));
  }
  std::ostringstream body;
  write_challenge_set(body, neutral);
  write_text(ctx.cfg.out, body.str());

  std::vector<std::string> distinct;
  for (const auto& r : neutral) distinct.push_back(r.sentence + '\t' + std::to_string(r.entity_index));
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  const auto issues = verify_neutral(neutral, rules);
  ctx.log.count("records", records.size());
  ctx.log.count("pronouns_rewritten", rewritten);
  ctx.log.count("verbs_repaired", repaired);
  ctx.log.count("distinct_neutral_sentences", distinct.size());
  ctx.log.ids("already_neutral", already);
  ctx.log.ids("verification_failures", offending_ids(issues));
  if (machine(ctx.cfg)) {
    ctx.out << "records=" << records.size() << "\nrewritten=" << rewritten << "\nrepaired=" << repaired
            << "\nissues=" << issues.size() << '\n';
  } else {
    ctx.out << "neutralized " << records.size() << " records (" << rewritten << " pronouns, " << repaired
            << " verbs), " << issues.size() << " verification issues\n";
  }
  return issues.empty() ? kExitOk : kExitValidation;
}

int cmd_verify_neutral(Ctx& ctx) {
  const auto records = load_records(ctx.cfg);
  const auto issues = verify_neutral(records, load_rules(ctx.cfg));
  for (const auto& i : issues) {
    ctx.out << i.id << '\t'
            << (i.kind == NeutralIssue::Kind::ResidualPronoun ? "residual_pronoun" : "agreement_residue") << '\t'
            << i.token_index << '\t' << i.token << '\n';
  }
  ctx.log.count("records", records.size());
  ctx.log.count("issues", issues.size());
  ctx.log.ids("offending", offending_ids(issues));
  return issues.empty() ? kExitOk : kExitValidation;
}

int cmd_stereotypes(Ctx& ctx) {
  require(ctx.cfg.pro, "--pro");
  require_out(ctx.cfg.out, "--out");
  ParseOptions opts;
  opts.id_prefix = ctx.cfg.id_prefix;
  const auto lex = StereotypeLexicon::from_pro_subset(parse_challenge_set(ctx.cfg.pro, opts));
  std::ostringstream body;
  lex.save(body);
  write_text(ctx.cfg.out, body.str());
  ctx.log.count("professions", lex.size());
  ctx.out << "wrote " << lex.size() << " professions\n";
  return kExitOk;
}

int cmd_pairs(Ctx& ctx) {
  const auto records = load_records(ctx.cfg);
  require(ctx.cfg.stereotypes, "--stereotypes");
  require_out(ctx.cfg.out, "--out");
  const auto result = build_minimal_pairs(records, StereotypeLexicon::load(ctx.cfg.stereotypes));
  std::ostringstream body;
  write_pairs(body, result.pairs);
  write_text(ctx.cfg.out, body.str());
  ctx.log.count("records", records.size());
  ctx.log.count("pairs", result.pairs.size());
  ctx.log.ids("unpaired", result.unpaired_ids);
  if (machine(ctx.cfg)) {
    ctx.out << "pairs=" << result.pairs.size() << "\nunpaired=" << result.unpaired_ids.size() << '\n';
  } else {
    ctx.out << result.pairs.size() << " minimal pairs, " << result.unpaired_ids.size() << " unpaired records\n";
  }
  return kExitOk;
}

AlignmentRun run_aligner(Ctx& ctx, const std::vector<SentenceRecord>& records, const Translations& tr) {
  std::optional<ParallelCorpus> extra;
  if (!ctx.cfg.extra_parallel.empty()) {
    require(ctx.cfg.extra_parallel, "--extra-parallel");
    extra = ParallelCorpus::from_joined_file(ctx.cfg.extra_parallel);
  }
  auto run = align_records(records, tr, aligner_params(ctx.cfg), extra ? &*extra : nullptr);
  ctx.log.decision("tension", ctx.cfg.tension);
  ctx.log.decision("null_prob", ctx.cfg.null_prob);
  ctx.log.decision("iterations", ctx.cfg.iterations);
  ctx.log.decision("log_likelihoods", run.log_likelihoods);
  ctx.log.count("oov_positions", run.oov_positions);
  return run;
}

int cmd_align(Ctx& ctx) {
  const auto records = load_records(ctx.cfg);
  require(ctx.cfg.translations, "--translations");
  require_out(ctx.cfg.out, "--out");
  const auto tr = read_translations(ctx.cfg.translations, ctx.cfg.id_prefix);
  const auto run = run_aligner(ctx, records, tr);
  write_alignments(ctx.cfg.out, run.links);
  ctx.log.count("records", records.size());
  ctx.log.ids("missing_translations", run.missing_translation_ids);
  ctx.out << "aligned " << records.size() - run.missing_translation_ids.size() << " of " << records.size()
          << " records\n";
  return kExitOk;
}

int cmd_evaluate(Ctx& ctx) {
  const auto records = load_records(ctx.cfg);
  require(ctx.cfg.translations, "--translations");
  require(ctx.cfg.lexicon, "--lexicon");
  const auto tr = read_translations(ctx.cfg.translations, ctx.cfg.id_prefix);
  std::vector<std::vector<AlignmentLink>> links;
  if (!ctx.cfg.alignments.empty()) {
    require(ctx.cfg.alignments, "--alignments");
    links = read_alignments(ctx.cfg.alignments);
    ctx.log.decision("alignment_source", ctx.cfg.alignments);
  } else {
    links = run_aligner(ctx, records, tr).links;
    ctx.log.decision("alignment_source", "trained");
  }
  const auto lexicon = GenderLexicon::load(ctx.cfg.lexicon);
  const auto articles = ctx.cfg.articles.empty() ? ArticleTable::builtin() : ArticleTable::load(ctx.cfg.articles);
  const GenderDetector detector(lexicon, articles);
  const auto run = evaluate_records(records, tr, links, detector);
  if (!ctx.cfg.out.empty()) write_outcomes(ctx.cfg.out, run.outcomes);

  const auto neutral = std::count_if(records.begin(), records.end(),
                                     [](const auto& r) { return r.gold_gender == Gender::Neutral; });
  if (neutral != 0 && static_cast<std::size_t>(neutral) != records.size()) {
    throw ValidationError("input mixes neutral and gendered records");
  }
  MetricsReport report;
  if (records.empty()) throw ValidationError("input holds no records");
  report.unknown = unknown_rate(run.outcomes);
  if (neutral == 0) {
    report.accuracy = standard_accuracy(run.outcomes);
    if (!ctx.cfg.pairs.empty()) {
      require(ctx.cfg.pairs, "--pairs");
      const auto pairs = read_pairs(ctx.cfg.pairs);
      report.pairs = minimal_pair_accuracy(pairs, index_outcomes(run.outcomes));
    }
  } else {
    report.prior = prior_bias(run.outcomes);
  }
  ctx.log.count("records", records.size());
  ctx.log.count("unknown", run.unknown_ids.size());
  ctx.log.ids("unknown_ids", run.unknown_ids);
  ctx.log.ids("missing_translations", run.missing_translation_ids);
  print_report(ctx, report);
  return kExitOk;
}

std::vector<GenderOutcome> load_outcomes(const RunConfig& cfg) {
  require(cfg.outcomes, "--outcomes");
  return read_outcomes(cfg.outcomes);
}

int cmd_mpa(Ctx& ctx) {
  require(ctx.cfg.pairs, "--pairs");
  const auto outcomes = load_outcomes(ctx.cfg);
  const auto pairs = read_pairs(ctx.cfg.pairs);
  MetricsReport report;
  report.pairs = minimal_pair_accuracy(pairs, index_outcomes(outcomes));
  ctx.log.count("pairs", pairs.size());
  ctx.log.count("accurate_pairs", report.pairs->mpa.count);
  print_report(ctx, report);
  if (!ctx.cfg.out.empty()) write_text(ctx.cfg.out, report.to_machine());
  return kExitOk;
}

int cmd_prior_bias(Ctx& ctx) {
  const auto outcomes = load_outcomes(ctx.cfg);
  MetricsReport report;
  report.prior = prior_bias(outcomes);
  report.unknown = unknown_rate(outcomes);
  std::vector<std::string> unknown;
  for (const auto& o : outcomes) {
    if (o.label == GenderLabel::Unknown) unknown.push_back(o.record_id);
  }
  ctx.log.count("outcomes", outcomes.size());
  ctx.log.ids("unknown_ids", unknown);
  print_report(ctx, report);
  if (!ctx.cfg.out.empty()) write_text(ctx.cfg.out, report.to_machine());
  return kExitOk;
}

struct Located {
  std::string id;
  AttentionDump dump;
  SpanMap spans;
};

// Records of the requested cue gender (restricted to accurate pairs when
// pairs and outcomes are given) whose dumps exist and whose spans match.
std::vector<Located> locate_instances(Ctx& ctx) {
  const auto& cfg = ctx.cfg;
  const auto records = load_records(cfg);
  require(cfg.dumps, "--dumps");
  require(cfg.lexicon, "--lexicon");
  if (cfg.cue_gender != "feminine" && cfg.cue_gender != "masculine") {
    throw ValidationError("--cue-gender must be feminine or masculine");
  }
  const auto want = cfg.cue_gender == "feminine" ? Gender::Female : Gender::Male;
  const auto lexicon = GenderLexicon::load(cfg.lexicon);
  const auto articles = cfg.articles.empty() ? ArticleTable::builtin() : ArticleTable::load(cfg.articles);

  std::optional<std::set<std::string>> allowed;
  if (!cfg.pairs.empty() || !cfg.outcomes.empty()) {
    require(cfg.pairs, "--pairs");
    const auto outcomes = load_outcomes(cfg);
    const auto pairs = read_pairs(cfg.pairs);
    const auto mpa = minimal_pair_accuracy(pairs, index_outcomes(outcomes));
    allowed.emplace();
    for (auto k : mpa.accurate_pairs) {
      allowed->insert(pairs[k].male_id);
      allowed->insert(pairs[k].female_id);
    }
    ctx.log.count("accurate_pairs", mpa.accurate_pairs.size());
  }

  std::vector<Located> found;
  std::vector<std::string> missing;
  std::vector<std::string> no_match;
  std::vector<std::string> no_forms;
  std::size_t considered = 0;
  for (const auto& r : records) {
    if (r.gold_gender != want || (allowed && !allowed->contains(r.id))) continue;
    ++considered;
    const auto dir = fs::path(cfg.dumps) / r.id;
    if (!fs::is_directory(dir)) {
      missing.push_back(r.id);
      continue;
    }
    SpanQuery q;
    q.profession_forms = lexicon.forms_for(r.profession);
    if (q.profession_forms.empty()) {
      no_forms.push_back(r.id);
      continue;
    }
    const auto toks = r.tokens();
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (const auto tag = classify_pronoun(toks, i); tag && tag->gender == want) {
        q.cue_surface = tag->base;
        break;
      }
    }
    if (q.cue_surface.empty()) throw ValidationError("record " + r.id + " has no " + cfg.cue_gender + " cue");
    if (r.secondary_entity_index && *r.secondary_entity_index < toks.size()) {
      q.secondary_forms = lexicon.forms_for(text::to_lower(text::split_token(toks[*r.secondary_entity_index]).core));
    }
    auto dump = read_dump(dir);
    auto spans = locate_spans(dump, q, articles);
    if (!spans) {
      no_match.push_back(r.id);
      continue;
    }
    found.push_back({r.id, std::move(dump), std::move(*spans)});
  }
  ctx.log.count("considered", considered);
  ctx.log.count("located", found.size());
  ctx.log.ids("missing_dumps", missing);
  ctx.log.ids("unmatched_spans", no_match);
  ctx.log.ids("no_lexicon_forms", no_forms);
  ctx.log.decision("cue_gender", cfg.cue_gender);
  ctx.log.decision("simd", simd::isa_name(simd::active_isa()));
  return found;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

int cmd_attention_report(Ctx& ctx) {
  require_out(ctx.cfg.out, "--out");
  const auto range = parse_layers(ctx.cfg.layers);
  const auto scale = parse_scale(ctx.cfg.scale);
  auto found = locate_instances(ctx);
  std::vector<AttentionInstance> instances;
  for (const auto& f : found) instances.push_back({f.id, cue_attention(f.dump, f.spans)});
  const auto matrix = aggregate(std::move(instances), ctx.cfg.n_min);
  export_heatmap(matrix, range, scale, ctx.cfg.out);
  ctx.log.count("aggregated", matrix.n);
  ctx.log.decision("n_min", ctx.cfg.n_min);
  ctx.log.decision("layers", ctx.cfg.layers);
  double best = -1.0;
  std::size_t bl = 0;
  std::size_t bh = 0;
  for (auto l = range.first; l <= range.last; ++l) {
    for (std::size_t h = 0; h < matrix.n_heads; ++h) {
      if (matrix.at(l, h) > best) {
        best = matrix.at(l, h);
        bl = l;
        bh = h;
      }
    }
  }
  if (machine(ctx.cfg)) {
    ctx.out << "instances=" << matrix.n << "\nrows=" << range.size() << "\nmax_layer=" << bl << "\nmax_head=" << bh
            << "\nmax_value=" << fixed4(best) << '\n';
  } else {
    ctx.out << "aggregated " << matrix.n << " instances over layers " << range.first << "-" << range.last << "\n"
            << "strongest cue attention: layer " << bl << ", head " << bh << " = " << fixed4(best) << '\n';
  }
  return kExitOk;
}

int cmd_sanity_check(Ctx& ctx) {
  const auto range = parse_layers(ctx.cfg.layers);
  auto found = locate_instances(ctx);
  if (found.empty()) throw ValidationError("no attention instances located");
  double mass_sum = 0.0;
  double mass_min = 1.0;
  double mass_max = 0.0;
  std::vector<AttentionInstance> cue;
  std::vector<AttentionInstance> secondary;
  for (const auto& f : found) {
    const auto m = prompt_attention_mass(f.dump, f.spans);
    mass_sum += m;
    mass_min = std::min(mass_min, m);
    mass_max = std::max(mass_max, m);
    if (f.spans.secondary_span) {
      cue.push_back({f.id, cue_attention(f.dump, f.spans)});
      secondary.push_back({f.id, secondary_entity_attention(f.dump, f.spans)});
    }
  }
  const double mass_mean = mass_sum / static_cast<double>(found.size());
  std::ostringstream rep;
  const bool mach = machine(ctx.cfg);
  if (mach) {
    rep << "prompt_mass.mean=" << fixed4(mass_mean) << "\nprompt_mass.min=" << fixed4(mass_min)
        << "\nprompt_mass.max=" << fixed4(mass_max) << "\nprompt_mass.count=" << found.size()
        << "\nsecondary.count=" << secondary.size() << '\n';
  } else {
    rep << "Prompt attention mass over " << found.size() << " instances: mean " << fixed4(mass_mean) << ", min "
        << fixed4(mass_min) << ", max " << fixed4(mass_max) << '\n';
  }
  const auto layer = ctx.cfg.probe_layer;
  ctx.log.count("with_secondary", secondary.size());
  if (!secondary.empty()) {
    const auto n = secondary.size();
    const auto cue_m = aggregate(std::move(cue), n);
    const auto sec_m = aggregate(std::move(secondary), n);
    check_layer_range(cue_m, {layer, layer});
    check_layer_range(cue_m, range);
    if (!mach) rep << "Attention to the cue in layer " << layer << " (" << n << " instances)\n  head  target  secondary\n";
    for (std::size_t h = 0; h < cue_m.n_heads; ++h) {
      if (mach) {
        rep << "layer" << layer << ".head" << h << ".target=" << fixed4(cue_m.at(layer, h)) << '\n'
            << "layer" << layer << ".head" << h << ".secondary=" << fixed4(sec_m.at(layer, h)) << '\n';
      } else {
        char buf[64];
        std::snprintf(buf, sizeof buf, "  %4zu  %6.4f  %9.4f\n", h, cue_m.at(layer, h), sec_m.at(layer, h));
        rep << buf;
      }
    }
  } else if (!mach) {
    rep << "No instance has a located secondary entity\n";
  }
  ctx.out << rep.str();
  if (!ctx.cfg.out.empty()) write_text(ctx.cfg.out, rep.str());
  return kExitOk;
}

struct Command {
  const char* name;
  const char* help;
  int (*fn)(Ctx&);
};

constexpr Command kCommands[] = {
    {"neutralize", "Rewrite gendered pronouns to singular they and repair verbs", cmd_neutralize},
    {"verify-neutral", "List residual gendered pronouns and agreement residues", cmd_verify_neutral},
    {"stereotypes", "Build the profession stereotype lexicon from a pro-stereotypical subset", cmd_stereotypes},
    {"pairs", "Build minimal pairs from a challenge set", cmd_pairs},
    {"align", "Train the aligner and write Pharaoh alignments", cmd_align},
    {"evaluate", "Extract target genders and report accuracy or prior bias", cmd_evaluate},
    {"mpa", "Minimal pair accuracy from pairs and outcomes", cmd_mpa},
    {"prior-bias", "Prior bias from neutral-set outcomes", cmd_prior_bias},
    {"attention-report", "Aggregate cue attention and export heatmaps", cmd_attention_report},
    {"sanity-check", "Prompt attention mass and secondary-entity attention", cmd_sanity_check},
};

int run(CLI::App& app, RunConfig& cfg, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "Key=value configuration file; command-line flags override it");
  bool show_config = false;
  app.add_flag("--show-config", show_config, "Print the effective configuration and exit")->configurable(false);
  app.add_option("--input", cfg.input, "Challenge set (WinoMT tab-separated layout)");
  app.add_option("--pro", cfg.pro, "Pro-stereotypical subset");
  app.add_option("--translations", cfg.translations, "Translations, id<TAB>text");
  app.add_option("--alignments", cfg.alignments, "Pharaoh alignments, one line per record");
  app.add_option("--extra-parallel", cfg.extra_parallel, "Additional 'src ||| tgt' training pairs for the aligner");
  app.add_option("--outcomes", cfg.outcomes, "Outcome file written by evaluate");
  app.add_option("--pairs", cfg.pairs, "Minimal pair file");
  app.add_option("--stereotypes", cfg.stereotypes, "Profession stereotype lexicon");
  app.add_option("--dumps", cfg.dumps, "Directory of per-sentence attention dumps");
  app.add_option("--lexicon", cfg.lexicon, "Italian profession lexicon");
  app.add_option("--articles", cfg.articles, "Italian article table");
  app.add_option("--rules", cfg.rules, "Neutralization rule table (built-in when empty)");
  app.add_option("--out", cfg.out, "Output artifact path (heatmap stem for attention-report)");
  app.add_option("--log", cfg.log, "JSON run log path (default: <out>.log.json, else stderr)");
  app.add_option("--id-prefix", cfg.id_prefix, "Prefix for line-number ids");
  app.add_option("--tension", cfg.tension, "Aligner diagonal tension");
  app.add_option("--null-prob", cfg.null_prob, "Aligner NULL probability");
  app.add_option("--iterations", cfg.iterations, "Aligner EM iterations");
  app.add_option("--n-min", cfg.n_min, "Instances kept for aggregation");
  app.add_option("--layers", cfg.layers, "Heatmap layer range FIRST-LAST (inclusive)");
  app.add_option("--probe-layer", cfg.probe_layer, "Layer compared in sanity-check");
  app.add_option("--cue-gender", cfg.cue_gender, "feminine or masculine");
  app.add_option("--scale", cfg.scale, "Fixed heatmap color scale LO,HI");
  app.add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"table", "machine"}));
  app.require_subcommand(0, 1);

  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : kCommands) subs.emplace_back(app.add_subcommand(c.name, c.help)->fallthrough(), &c);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  if (show_config) {
    out << app.config_to_str(true, false);
    return kExitOk;
  }
  const Command* chosen = nullptr;
  for (const auto& [sub, cmd] : subs) {
    if (sub->parsed()) chosen = cmd;
  }
  if (!chosen) {
    err << app.help();
    return kExitValidation;
  }

  Ctx ctx{cfg, out, err, RunLog(chosen->name)};
  int status = kExitOk;
  try {
    status = chosen->fn(ctx);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    status = kExitIo;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    status = kExitValidation;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    status = kExitIo;
  }
  ctx.log.decision("exit_status", status);
  try {
    if (!cfg.log.empty()) {
      text::write_file(cfg.log, ctx.log.str());
    } else if (!cfg.out.empty() && status == kExitOk) {
      text::write_file(cfg.out + ".log.json", ctx.log.str());
    } else {
      err << ctx.log.str();
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return status;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gender bias diagnostics for machine translation", "mtgb"};
  RunConfig cfg;
  return run(app, cfg, args, out, err);
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace mtgb
