#ifndef SUBJPARSE_STATS_HPP
#define SUBJPARSE_STATS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "subjparse/encoder.hpp"
#include "subjparse/nets.hpp"

namespace subjparse {

struct RankFrequencyRow {
    std::size_t rank = 0;  // 1-based
    std::uint32_t item = 0;
    std::size_t freq = 0;
    double p = 0.0;
    double p_times_n = 0.0;
};

struct RankFrequencyTable {
    std::vector<RankFrequencyRow> rows;
    std::size_t total = 0;
};

// Ranks items by descending frequency; ties broken by item id.
RankFrequencyTable rank_frequency(const std::vector<std::uint32_t>& items);

void write_rank_frequency_csv(const RankFrequencyTable& table, const TupleIndex* index,
                              const TagSet* tagset, std::ostream& out);

struct EntropyResult {
    double block_bits = 0.0;       // H_n
    double per_symbol_bits = 0.0;  // H_n / n
    std::size_t sample_size = 0;   // number of n-grams observed
};

// Plug-in block entropy of the empirical n-gram distribution, n in 1..3.
EntropyResult ngram_entropy(const std::vector<std::vector<TagId>>& sequences, int n);

struct WeightFrequencyRow {
    std::uint32_t tuple = 0;
    std::size_t freq_yes = 0, freq_no = 0;
    double weight_yes = 0.0, weight_no = 0.0;
};

// Per active tuple: training-set occurrence counts and final weights.
// Perceptron weights land in weight_yes with weight_no = 0.
std::vector<WeightFrequencyRow> weight_frequency_report(const Model& model,
                                                        const TrainingSet& data);

void write_weight_frequency_csv(const std::vector<WeightFrequencyRow>& rows,
                                const TupleIndex& index, const TagSet& tagset,
                                std::ostream& out);

// Tuples linked only to the 'no' output of a trained Hodyne net, as
// prohibition-rule candidates.
std::vector<std::vector<TagId>> extract_prohibition_candidates(const HodyneModel& model,
                                                               const TupleIndex& index);

// Spearman rank correlation; NaN-free, returns 0 for degenerate input.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace subjparse

#endif
