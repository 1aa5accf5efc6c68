#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "idsample/ingest.hpp"

namespace idsample {

enum class Granularity { kBinary, kTrafficType };

// Knobs of the acceptance loop. The seed pins the whole draw sequence;
// retries continue the same stream.
struct SampleRecipe {
  std::uint64_t seed = 0;
  double similarity_alpha = 0.05;
  double min_expected_count = 5.0;
  int max_attempts = 100;
};

struct LabelDistribution {
  Granularity granularity = Granularity::kTrafficType;
  std::map<int, long> counts;        // class id -> count
  std::map<int, double> proportions; // class id -> count/total
  long total = 0;
};

// Outcome of the chi-square goodness-of-fit behind "S is similar to DS".
struct SimilarityVerdict {
  double statistic = 0.0;
  double threshold = 0.0;
  int degrees_of_freedom = 0;
  std::vector<int> merged_classes;  // classes pooled for low expected counts
  bool similar = false;
};

// get_sample plus the loop diagnostics the provenance report needs.
struct SampleOutcome {
  Dataset sample;
  int attempts = 0;
  bool trivial_check = false;  // reference had < 2 classes: nothing to test
  std::optional<SimilarityVerdict> verdict;
};

struct BalanceOutcome {
  Dataset sample;
  bool tie = false;  // equal class counts: input returned unchanged
  int minority_label = -1;
  long minority_count = 0;
  SampleOutcome majority;  // inner get_sample details; empty when tie
};

// Exact counts and proportions of the requested label column.
LabelDistribution label_distribution(const Dataset& ds, Granularity granularity);

LabelDistribution distribution_from_counts(const std::map<int, long>& counts,
                                           Granularity granularity);

// Chi-square goodness-of-fit of candidate counts against expected counts
// candidate.total * reference.proportions. Classes with expected count below
// recipe.min_expected_count are pooled into a single bucket. A class present
// in the candidate but absent from the reference forces similar=false.
// Throws InputError when fewer than 2 buckets remain after pooling.
SimilarityVerdict distribution_similar(const LabelDistribution& reference,
                                       const LabelDistribution& candidate,
                                       const SampleRecipe& recipe);

// Seeded uniform permutation, first `num` rows, accepted once the sample's
// traffic-type distribution passes distribution_similar against ds. Each
// failed attempt continues the PRNG stream. Throws SamplingExhausted when
// max_attempts runs out.
Dataset get_sample(const Dataset& ds, long num, const SampleRecipe& recipe);
SampleOutcome get_sample_outcome(const Dataset& ds, long num,
                                 const SampleRecipe& recipe);

// All rows of the minority binary class, plus an equally sized
// representative sample of the rest. Equal class counts return the dataset
// unchanged (with a provenance note).
Dataset get_balanced_sample(const Dataset& ds, const SampleRecipe& recipe);
BalanceOutcome get_balanced_sample_outcome(const Dataset& ds,
                                           const SampleRecipe& recipe);

}  // namespace idsample
