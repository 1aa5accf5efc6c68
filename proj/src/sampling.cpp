#include "idsample/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "idsample/errors.hpp"
#include "idsample/rng.hpp"
#include "idsample/special.hpp"

namespace idsample {

LabelDistribution distribution_from_counts(const std::map<int, long>& counts,
                                           Granularity granularity) {
  LabelDistribution dist;
  dist.granularity = granularity;
  dist.counts = counts;
  for (const auto& [cls, count] : counts) dist.total += count;
  if (dist.total <= 0) throw InputError("label distribution over empty data");
  for (const auto& [cls, count] : counts) {
    dist.proportions[cls] = static_cast<double>(count) / static_cast<double>(dist.total);
  }
  return dist;
}

LabelDistribution label_distribution(const Dataset& ds, Granularity granularity) {
  if (ds.rows() == 0) throw InputError("label_distribution: empty dataset");
  std::map<int, long> counts;
  const auto& column =
      granularity == Granularity::kBinary ? ds.binary_label : ds.traffic_type;
  for (long r = 0; r < ds.rows(); ++r) ++counts[column(r)];
  return distribution_from_counts(counts, granularity);
}

SimilarityVerdict distribution_similar(const LabelDistribution& reference,
                                       const LabelDistribution& candidate,
                                       const SampleRecipe& recipe) {
  if (reference.granularity != candidate.granularity) {
    throw InputError("distribution_similar: granularities differ");
  }
  if (candidate.total < 1) {
    throw InputError("distribution_similar: candidate is empty");
  }

  bool foreign = false;
  for (const auto& [cls, count] : candidate.counts) {
    if (count > 0 && !reference.counts.count(cls)) foreign = true;
  }

  // Buckets over the reference classes: each class with a large enough
  // expected count stands alone, the rest pool into one bucket.
  SimilarityVerdict verdict;
  const double total = static_cast<double>(candidate.total);
  double pooled_expected = 0.0, pooled_observed = 0.0;
  double statistic = 0.0;
  int buckets = 0;
  for (const auto& [cls, prop] : reference.proportions) {
    double expected = total * prop;
    auto it = candidate.counts.find(cls);
    double observed = it == candidate.counts.end() ? 0.0 : static_cast<double>(it->second);
    if (expected < recipe.min_expected_count) {
      verdict.merged_classes.push_back(cls);
      pooled_expected += expected;
      pooled_observed += observed;
    } else {
      double d = observed - expected;
      statistic += d * d / expected;
      ++buckets;
    }
  }
  if (!verdict.merged_classes.empty()) {
    ++buckets;
    if (pooled_expected > 0) {
      double d = pooled_observed - pooled_expected;
      statistic += d * d / pooled_expected;
    }
  }

  if (!foreign && buckets < 2) {
    throw InputError(
        "distribution_similar: fewer than 2 buckets after pooling; "
        "similarity undecidable");
  }

  verdict.degrees_of_freedom = std::max(buckets - 1, 1);
  verdict.threshold =
      chi_square_critical(1.0 - recipe.similarity_alpha, verdict.degrees_of_freedom);
  verdict.statistic = foreign ? std::numeric_limits<double>::infinity() : statistic;
  verdict.similar = verdict.statistic <= verdict.threshold;
  return verdict;
}

namespace {

struct IndexSample {
  std::vector<long> chosen;
  int attempts = 0;
  bool trivial_check = false;
  std::optional<SimilarityVerdict> verdict;
};

// Acceptance loop over row indices of a pool; rows are materialized only
// after a permutation is accepted.
IndexSample sample_from_pool(const Dataset& ds, const std::vector<long>& pool,
                             long num, const SampleRecipe& recipe) {
  const long n = static_cast<long>(pool.size());
  if (num < 1 || num > n) {
    throw InputError("get_sample: num=" + std::to_string(num) +
                     " out of range [1, " + std::to_string(n) + "]");
  }
  if (recipe.max_attempts < 1) throw InputError("max_attempts must be >= 1");
  if (!(recipe.similarity_alpha > 0.0 && recipe.similarity_alpha < 1.0)) {
    throw InputError("similarity_alpha must lie in (0,1)");
  }

  std::map<int, long> ref_counts;
  for (long r : pool) ++ref_counts[ds.traffic_type(r)];
  LabelDistribution reference =
      distribution_from_counts(ref_counts, Granularity::kTrafficType);

  Rng rng(recipe.seed);
  IndexSample result;

  // A single-class pool cannot fail the similarity check; any subset has
  // the identical distribution, so the first permutation is accepted.
  const bool trivial = reference.counts.size() < 2;

  double best_statistic = std::numeric_limits<double>::infinity();
  for (int attempt = 1; attempt <= recipe.max_attempts; ++attempt) {
    std::vector<long> perm = rng.permutation(n);
    perm.resize(static_cast<size_t>(num));

    result.attempts = attempt;
    if (trivial) {
      result.trivial_check = true;
      result.chosen.reserve(perm.size());
      for (long p : perm) result.chosen.push_back(pool[static_cast<size_t>(p)]);
      return result;
    }

    std::map<int, long> counts;
    for (long p : perm) ++counts[ds.traffic_type(pool[static_cast<size_t>(p)])];
    LabelDistribution candidate =
        distribution_from_counts(counts, Granularity::kTrafficType);
    SimilarityVerdict verdict = distribution_similar(reference, candidate, recipe);
    best_statistic = std::min(best_statistic, verdict.statistic);
    if (verdict.similar) {
      result.verdict = verdict;
      result.chosen.reserve(perm.size());
      for (long p : perm) result.chosen.push_back(pool[static_cast<size_t>(p)]);
      return result;
    }
  }
  throw SamplingExhausted(
      "no similar sample after " + std::to_string(recipe.max_attempts) +
          " attempts; best chi-square statistic " + std::to_string(best_statistic),
      best_statistic);
}

std::string verdict_note(const SampleOutcome& outcome) {
  if (outcome.trivial_check) {
    return "similarity check trivial (single traffic class)";
  }
  const SimilarityVerdict& v = *outcome.verdict;
  std::string note = "chi2=" + format_double(v.statistic) +
                     " threshold=" + format_double(v.threshold) +
                     " df=" + std::to_string(v.degrees_of_freedom);
  if (!v.merged_classes.empty()) {
    note += " pooled=" + std::to_string(v.merged_classes.size()) + " classes";
  }
  return note;
}

}  // namespace

SampleOutcome get_sample_outcome(const Dataset& ds, long num,
                                 const SampleRecipe& recipe) {
  std::vector<long> pool(static_cast<size_t>(ds.rows()));
  for (long r = 0; r < ds.rows(); ++r) pool[static_cast<size_t>(r)] = r;
  IndexSample idx = sample_from_pool(ds, pool, num, recipe);

  SampleOutcome outcome;
  outcome.attempts = idx.attempts;
  outcome.trivial_check = idx.trivial_check;
  outcome.verdict = idx.verdict;
  outcome.sample = select_rows(ds, idx.chosen);
  if (!outcome.sample.provenance.empty()) outcome.sample.provenance += "\n";
  outcome.sample.provenance +=
      "get_sample: num=" + std::to_string(num) + " of " + std::to_string(ds.rows()) +
      ", seed=" + std::to_string(recipe.seed) +
      ", attempts=" + std::to_string(idx.attempts) + ", " + verdict_note(outcome);
  return outcome;
}

Dataset get_sample(const Dataset& ds, long num, const SampleRecipe& recipe) {
  return get_sample_outcome(ds, num, recipe).sample;
}

BalanceOutcome get_balanced_sample_outcome(const Dataset& ds,
                                           const SampleRecipe& recipe) {
  std::vector<long> zeros, ones;
  for (long r = 0; r < ds.rows(); ++r) {
    (ds.binary_label(r) == 0 ? zeros : ones).push_back(r);
  }
  if (zeros.empty() || ones.empty()) {
    throw InputError("get_balanced_sample: dataset has a single binary class");
  }

  BalanceOutcome outcome;
  if (zeros.size() == ones.size()) {
    outcome.tie = true;
    outcome.minority_count = static_cast<long>(zeros.size());
    outcome.sample = ds;
    if (!outcome.sample.provenance.empty()) outcome.sample.provenance += "\n";
    outcome.sample.provenance +=
        "get_balanced_sample: classes already balanced (" +
        std::to_string(zeros.size()) + " each); dataset returned unchanged";
    return outcome;
  }

  const bool zero_is_minority = zeros.size() < ones.size();
  const std::vector<long>& minority = zero_is_minority ? zeros : ones;
  const std::vector<long>& majority = zero_is_minority ? ones : zeros;
  outcome.minority_label = zero_is_minority ? 0 : 1;
  outcome.minority_count = static_cast<long>(minority.size());

  IndexSample idx =
      sample_from_pool(ds, majority, outcome.minority_count, recipe);
  outcome.majority.attempts = idx.attempts;
  outcome.majority.trivial_check = idx.trivial_check;
  outcome.majority.verdict = idx.verdict;

  std::vector<long> rows = minority;
  rows.insert(rows.end(), idx.chosen.begin(), idx.chosen.end());
  outcome.sample = select_rows(ds, rows);

  if (!outcome.sample.provenance.empty()) outcome.sample.provenance += "\n";
  outcome.sample.provenance +=
      "get_balanced_sample: minority label=" + std::to_string(outcome.minority_label) +
      " count=" + std::to_string(outcome.minority_count) +
      "; majority sampled: seed=" + std::to_string(recipe.seed) +
      ", attempts=" + std::to_string(idx.attempts) + ", " +
      verdict_note(outcome.majority);
  return outcome;
}

Dataset get_balanced_sample(const Dataset& ds, const SampleRecipe& recipe) {
  return get_balanced_sample_outcome(ds, recipe).sample;
}

}  // namespace idsample
