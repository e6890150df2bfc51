#include "subjparse/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

#include "subjparse/errors.hpp"

namespace subjparse {

RankFrequencyTable rank_frequency(const std::vector<std::uint32_t>& items) {
    if (items.empty()) throw DataError("rank_frequency: empty multiset");
    std::map<std::uint32_t, std::size_t> counts;
    for (auto i : items) ++counts[i];

    std::vector<std::pair<std::uint32_t, std::size_t>> sorted(counts.begin(), counts.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    RankFrequencyTable table;
    table.total = items.size();
    table.rows.reserve(sorted.size());
    for (std::size_t r = 0; r < sorted.size(); ++r) {
        RankFrequencyRow row;
        row.rank = r + 1;
        row.item = sorted[r].first;
        row.freq = sorted[r].second;
        row.p = static_cast<double>(row.freq) / static_cast<double>(table.total);
        row.p_times_n = row.p * static_cast<double>(row.rank);
        table.rows.push_back(row);
    }
    return table;
}

void write_rank_frequency_csv(const RankFrequencyTable& table, const TupleIndex* index,
                              const TagSet* tagset, std::ostream& out) {
    out << "rank,item,freq,p,p_times_n\n";
    for (const auto& row : table.rows) {
        out << row.rank << ',';
        if (index && tagset)
            out << index->tuple_name(row.item, *tagset);
        else
            out << row.item;
        out << ',' << row.freq << ',' << row.p << ',' << row.p_times_n << '\n';
    }
}

EntropyResult ngram_entropy(const std::vector<std::vector<TagId>>& sequences, int n) {
    if (n < 1 || n > 3) throw DataError("ngram_entropy: n must be in 1..3");
    std::map<std::vector<TagId>, std::size_t> counts;
    std::size_t total = 0;
    for (const auto& seq : sequences) {
        if (seq.size() < static_cast<std::size_t>(n)) continue;  // too short for any n-gram
        for (std::size_t i = 0; i + n <= seq.size(); ++i) {
            ++counts[std::vector<TagId>(seq.begin() + i, seq.begin() + i + n)];
            ++total;
        }
    }
    EntropyResult result;
    result.sample_size = total;
    for (const auto& [gram, c] : counts) {
        double p = static_cast<double>(c) / static_cast<double>(total);
        result.block_bits -= p * std::log2(p);
    }
    result.per_symbol_bits = result.block_bits / n;
    return result;
}

std::vector<WeightFrequencyRow> weight_frequency_report(const Model& model,
                                                        const TrainingSet& data) {
    if (model.dim() != data.dim)
        throw DataError("weight_frequency_report: model/data dimension mismatch");
    std::map<std::uint32_t, WeightFrequencyRow> rows;
    for (const auto& item : data.items) {
        for (auto i : item.vec.active) {
            auto& row = rows[i];
            row.tuple = i;
            (item.label == Label::Yes ? row.freq_yes : row.freq_no) += 1;
        }
    }
    const auto* hodyne = dynamic_cast<const HodyneModel*>(&model);
    const auto* perceptron = dynamic_cast<const PerceptronModel*>(&model);
    std::vector<WeightFrequencyRow> out;
    out.reserve(rows.size());
    for (auto& [i, row] : rows) {
        if (hodyne) {
            row.weight_yes = hodyne->enabled_yes[i] ? hodyne->w_yes[i] : 0.0;
            row.weight_no = hodyne->enabled_no[i] ? hodyne->w_no[i] : 0.0;
        } else if (perceptron) {
            row.weight_yes = perceptron->w[i];
        } else {
            throw DataError("weight_frequency_report supports Hodyne and Perceptron models");
        }
        out.push_back(row);
    }
    return out;
}

void write_weight_frequency_csv(const std::vector<WeightFrequencyRow>& rows,
                                const TupleIndex& index, const TagSet& tagset,
                                std::ostream& out) {
    out << "tuple,freq_yes,freq_no,weight_yes,weight_no\n";
    for (const auto& row : rows)
        out << index.tuple_name(row.tuple, tagset) << ',' << row.freq_yes << ',' << row.freq_no
            << ',' << row.weight_yes << ',' << row.weight_no << '\n';
}

std::vector<std::vector<TagId>> extract_prohibition_candidates(const HodyneModel& model,
                                                               const TupleIndex& index) {
    std::vector<std::vector<TagId>> out;
    if (!model.trained) return out;
    for (std::size_t i = 0; i < model.dim(); ++i)
        if (model.enabled_no[i] && !model.enabled_yes[i])
            out.push_back(index.decode(static_cast<std::uint32_t>(i)));
    return out;
}

namespace {

// Average ranks with ties sharing their mean rank.
std::vector<double> fractional_ranks(const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        double mean_rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DataError("spearman: size mismatch");
    if (x.size() < 2) return 0.0;
    auto rx = fractional_ranks(x);
    auto ry = fractional_ranks(y);
    double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / rx.size();
    double my = std::accumulate(ry.begin(), ry.end(), 0.0) / ry.size();
    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        double dx = rx[i] - mx, dy = ry[i] - my;
        cov += dx * dy;
        vx += dx * dx;
        vy += dy * dy;
    }
    if (vx == 0.0 || vy == 0.0) return 0.0;
    return cov / std::sqrt(vx * vy);
}

}  // namespace subjparse
