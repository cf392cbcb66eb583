#include "mtgb/metrics.hpp"

#include <sstream>

#include "mtgb/error.hpp"

namespace mtgb {

std::optional<double> Ratio::percent() const {
  if (total == 0) return std::nullopt;
  return 100.0 * static_cast<double>(count) / static_cast<double>(total);
}

std::optional<std::int64_t> Ratio::tenths() const {
  if (total == 0) return std::nullopt;
  // floor(1000 * count / total + 1/2) in integers.
  const auto c = static_cast<std::uint64_t>(count);
  const auto t = static_cast<std::uint64_t>(total);
  return static_cast<std::int64_t>((2000 * c + t) / (2 * t));
}

std::string Ratio::formatted() const {
  const auto t = tenths();
  if (!t) return "absent";
  return std::to_string(*t / 10) + "." + std::to_string(*t % 10) + "%";
}

StandardAccuracy standard_accuracy(std::span<const GenderOutcome> outcomes) {
  if (outcomes.empty()) throw ValidationError("standard accuracy needs at least one outcome");
  StandardAccuracy acc;
  for (const auto& o : outcomes) {
    if (o.gold_gender == Gender::Neutral || !o.correct) {
      throw ValidationError("standard accuracy needs gendered outcomes; " + o.record_id + " is neutral");
    }
    auto& stratum = o.gold_gender == Gender::Male ? acc.masculine : acc.feminine;
    const std::size_t hit = *o.correct ? 1 : 0;
    acc.overall.total += 1;
    acc.overall.count += hit;
    stratum.total += 1;
    stratum.count += hit;
  }
  return acc;
}

OutcomeIndex index_outcomes(std::span<const GenderOutcome> outcomes) {
  OutcomeIndex index;
  for (const auto& o : outcomes) {
    if (!index.emplace(o.record_id, o).second) throw ValidationError("duplicate outcome for record " + o.record_id);
  }
  return index;
}

MinimalPairAccuracy minimal_pair_accuracy(std::span<const PairIds> pairs, const OutcomeIndex& outcomes) {
  MinimalPairAccuracy out;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& p = pairs[k];
    const auto m = outcomes.find(p.male_id);
    const auto f = outcomes.find(p.female_id);
    if (m == outcomes.end() || f == outcomes.end()) {
      throw ValidationError("pair (" + p.male_id + ", " + p.female_id + ") is missing the outcome for " +
                            (m == outcomes.end() ? p.male_id : p.female_id));
    }
    out.mpa.total += 1;
    const bool accurate = m->second.correct.value_or(false) && f->second.correct.value_or(false);
    if (!accurate) continue;
    out.mpa.count += 1;
    out.accurate_pairs.push_back(k);
    (p.stereotype == ProfessionStereotype::ProF ? out.pro_f : out.pro_m).count += 1;
  }
  out.pro_f.total = out.mpa.count;
  out.pro_m.total = out.mpa.count;
  return out;
}

PriorBias prior_bias(std::span<const GenderOutcome> neutral_outcomes) {
  PriorBias pb;
  for (const auto& o : neutral_outcomes) {
    if (o.gold_gender != Gender::Neutral) {
      throw ValidationError("prior bias needs neutral-set outcomes; " + o.record_id + " is gendered");
    }
    switch (o.label) {
      case GenderLabel::Masculine: ++pb.masculine.count; break;
      case GenderLabel::Feminine: ++pb.feminine.count; break;
      case GenderLabel::Unknown: ++pb.unknown; break;
    }
  }
  pb.detected = pb.masculine.count + pb.feminine.count;
  if (pb.detected == 0) throw ValidationError("no gender realizations detected");
  pb.masculine.total = pb.detected;
  pb.feminine.total = pb.detected;
  return pb;
}

Ratio unknown_rate(std::span<const GenderOutcome> outcomes) {
  if (outcomes.empty()) throw ValidationError("unknown rate needs at least one outcome");
  Ratio r;
  for (const auto& o : outcomes) {
    r.total += 1;
    if (o.label == GenderLabel::Unknown) r.count += 1;
  }
  return r;
}

namespace {

void kv(std::ostringstream& out, const std::string& key, const Ratio& r) {
  const auto t = r.tenths();
  if (t) {
    out << key << '=' << *t / 10 << '.' << *t % 10 << '\n';
  } else {
    out << key << "=absent\n";
  }
  out << key << ".count=" << r.count << '\n';
  out << key << ".total=" << r.total << '\n';
}

void row(std::ostringstream& out, const std::string& label, const Ratio& r) {
  std::string cell = r.formatted();
  out << "  " << label;
  for (std::size_t i = label.size(); i < 22; ++i) out << ' ';
  for (std::size_t i = cell.size(); i < 8; ++i) out << ' ';
  out << cell << "  (" << r.count << "/" << r.total << ")\n";
}

}  // namespace

std::string MetricsReport::to_machine() const {
  std::ostringstream out;
  if (accuracy) {
    kv(out, "overall_acc", accuracy->overall);
    kv(out, "masc_acc", accuracy->masculine);
    kv(out, "fem_acc", accuracy->feminine);
  }
  if (unknown) kv(out, "unknown_rate", *unknown);
  if (pairs) {
    kv(out, "mpa", pairs->mpa);
    kv(out, "pro_f_share", pairs->pro_f);
    kv(out, "pro_m_share", pairs->pro_m);
  }
  if (prior) {
    kv(out, "prior_masc", prior->masculine);
    kv(out, "prior_fem", prior->feminine);
    out << "prior_unknown.count=" << prior->unknown << '\n';
  }
  return out.str();
}

std::string MetricsReport::to_table() const {
  std::ostringstream out;
  if (accuracy) {
    out << "Standard accuracy\n";
    row(out, "Overall", accuracy->overall);
    row(out, "Masculine", accuracy->masculine);
    row(out, "Feminine", accuracy->feminine);
  }
  if (unknown) {
    out << "Unknown assignments\n";
    row(out, "Unknown", *unknown);
  }
  if (pairs) {
    out << "Minimal pair accuracy\n";
    row(out, "MPA", pairs->mpa);
    row(out, "Pro-F", pairs->pro_f);
    row(out, "Pro-M", pairs->pro_m);
  }
  if (prior) {
    out << "Prior bias (Unknown excluded: " << prior->unknown << ")\n";
    row(out, "Masculine", prior->masculine);
    row(out, "Feminine", prior->feminine);
  }
  return out.str();
}

}  // namespace mtgb
