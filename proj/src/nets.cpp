#include "subjparse/nets.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "subjparse/errors.hpp"

namespace subjparse {

namespace {

void check_dim(std::size_t model_dim, const SparseBinaryVector& v) {
    if (v.dim != model_dim)
        throw DataError("vector dimension " + std::to_string(v.dim) +
                        " does not match model dimension " + std::to_string(model_dim));
}

std::string fmt_weight(double w) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", w);
    return buf;
}

}  // namespace

bool Model::classify_correct(const SparseBinaryVector& v, Label label) const {
    double g = score(v);
    return label == Label::Yes ? g > 0.0 : g < 0.0;
}

double PerceptronModel::score(const SparseBinaryVector& v) const {
    check_dim(w.size(), v);
    double s = bias;
    for (auto i : v.active) s += w[i];
    return s;
}

double HodyneModel::z_yes(const SparseBinaryVector& v) const {
    check_dim(w_yes.size(), v);
    double s = 0.0;
    for (auto i : v.active)
        if (enabled_yes[i]) s += w_yes[i];
    return s;
}

double HodyneModel::z_no(const SparseBinaryVector& v) const {
    check_dim(w_no.size(), v);
    double s = 0.0;
    for (auto i : v.active)
        if (enabled_no[i]) s += w_no[i];
    return s;
}

double HodyneModel::score(const SparseBinaryVector& v) const { return z_yes(v) - z_no(v); }

double LmsModel::bipolar(double x) { return std::tanh(x); }

double LmsModel::net(const SparseBinaryVector& v) const {
    check_dim(w.size(), v);
    double s = bias;
    for (auto i : v.active) s += w[i];
    return s;
}

double LmsModel::score(const SparseBinaryVector& v) const { return bipolar(net(v)); }

bool LmsModel::classify_correct(const SparseBinaryVector& v, Label label) const {
    double o = score(v);
    return label == Label::Yes ? o >= theta : o <= -theta;
}

double BayesModel::score_with_prior(const SparseBinaryVector& v, std::size_t n_candidates) const {
    check_dim(log_likelihood_ratio.size(), v);
    std::size_t denom = n_candidates > 1 ? n_candidates - 1 : 1;
    double g = -std::log(static_cast<double>(denom));
    for (auto i : v.active) g += log_likelihood_ratio[i];
    return g;
}

double BayesModel::score(const SparseBinaryVector& v) const { return score_with_prior(v, 2); }

double hodyne_update(double w, int delta) {
    double dw = delta * w;
    return (1.0 + dw / (1.0 + dw * dw * dw * dw)) * w;
}

double training_accuracy_pct(const Model& model, const TrainingSet& data) {
    if (data.items.empty()) return 0.0;
    std::size_t correct = 0;
    for (const auto& item : data.items)
        if (model.classify_correct(item.vec, item.label)) ++correct;
    return 100.0 * static_cast<double>(correct) / static_cast<double>(data.size());
}

PerceptronModel train_perceptron(const TrainingSet& data, const TrainParams& params,
                                 TrainReport* report) {
    if (data.items.empty()) throw DataError("empty training set");
    PerceptronModel model;
    model.w.assign(data.dim, 0.0);
    std::vector<std::uint8_t> visited(data.dim, 0);
    std::mt19937_64 rng(params.rng_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    TrainReport rep;
    for (int epoch = 1; epoch <= params.max_epochs; ++epoch) {
        std::size_t correct = 0;
        for (const auto& item : data.items) {
            check_dim(data.dim, item.vec);
            double sign = item.label == Label::Yes ? 1.0 : -1.0;
            // Guided initialization: a previously unseen input element gets
            // a random weight whose sign matches the class of the first
            // string it appears in; magnitude in (0, 0.3].
            for (auto i : item.vec.active) {
                if (!visited[i]) {
                    visited[i] = 1;
                    model.w[i] = sign * (1.0 - unit(rng)) * 0.3;
                }
            }
            double out = model.score(item.vec);
            bool ok = item.label == Label::Yes ? out > 0.0 : out < 0.0;
            if (ok) {
                ++correct;
            } else {
                // L1-normalized binary input scaled by the learning rate.
                double step = sign * params.learning_rate /
                              static_cast<double>(item.vec.active.empty() ? 1 : item.vec.active.size());
                for (auto i : item.vec.active) model.w[i] += step;
                model.bias += step;
            }
        }
        rep.epochs = epoch;
        rep.achieved_pct = 100.0 * static_cast<double>(correct) / static_cast<double>(data.size());
        if (rep.achieved_pct >= params.threshold_pct) {
            rep.converged = true;
            break;
        }
    }
    model.trained = true;
    if (report) *report = rep;
    return model;
}

HodyneModel train_hodyne(const TrainingSet& data, const TrainParams& params,
                         TrainReport* report) {
    if (data.items.empty()) throw DataError("empty training set");
    HodyneModel model;
    model.w_yes.assign(data.dim, 0.0);
    model.w_no.assign(data.dim, 0.0);
    model.enabled_yes.assign(data.dim, 0);
    model.enabled_no.assign(data.dim, 0);

    TrainReport rep;
    for (int epoch = 1; epoch <= params.max_epochs; ++epoch) {
        std::size_t correct = 0;
        for (const auto& item : data.items) {
            check_dim(data.dim, item.vec);
            bool want_yes = item.label == Label::Yes;
            // Enable links to the desired output on first encounter, at 1.0.
            auto& enabled = want_yes ? model.enabled_yes : model.enabled_no;
            auto& weights = want_yes ? model.w_yes : model.w_no;
            for (auto i : item.vec.active) {
                if (!enabled[i]) {
                    enabled[i] = 1;
                    weights[i] = 1.0;
                }
            }
            double z0 = model.z_yes(item.vec);
            double z1 = model.z_no(item.vec);
            bool ok = want_yes ? z0 > z1 : z1 > z0;  // a tie counts as misclassified
            if (ok) {
                ++correct;
                continue;
            }
            int delta_yes = want_yes ? +1 : -1;
            for (auto i : item.vec.active) {
                if (model.enabled_yes[i])
                    model.w_yes[i] = hodyne_update(model.w_yes[i], delta_yes);
                if (model.enabled_no[i])
                    model.w_no[i] = hodyne_update(model.w_no[i], -delta_yes);
            }
        }
        rep.epochs = epoch;
        rep.achieved_pct = 100.0 * static_cast<double>(correct) / static_cast<double>(data.size());
        if (rep.achieved_pct >= params.threshold_pct) {
            rep.converged = true;
            break;
        }
    }
    // Unvisited links read as 0.0 after training; the per-class enablement
    // flags keep the training-time connectivity for later analysis.
    model.trained = true;
    if (report) *report = rep;
    return model;
}

LmsModel train_lms(const TrainingSet& data, const TrainParams& params, TrainReport* report) {
    if (data.items.empty()) throw DataError("empty training set");
    if (params.theta <= 0.0 || params.theta >= 1.0)
        throw DataError("LMS theta must lie in (0, 1)");
    LmsModel model;
    model.w.assign(data.dim, 0.0);
    model.theta = params.theta;

    TrainReport rep;
    double prev_sse = 0.0;
    int rising_epochs = 0;
    for (int epoch = 1; epoch <= params.max_epochs; ++epoch) {
        std::size_t correct = 0;
        double sse = 0.0;
        for (const auto& item : data.items) {
            check_dim(data.dim, item.vec);
            bool want_yes = item.label == Label::Yes;
            double target = want_yes ? params.theta : -params.theta;
            double o = LmsModel::bipolar(model.net(item.vec));
            // Sontag rule: past the threshold in the right direction means
            // zero error, even if the target is overshot.
            if (want_yes ? o >= params.theta : o <= -params.theta) {
                ++correct;
                continue;
            }
            double err = target - o;
            sse += err * err;
            double step = params.learning_rate * err * (1.0 - o * o);
            for (auto i : item.vec.active) model.w[i] += step;
            model.bias += step;
        }
        rep.epochs = epoch;
        rep.achieved_pct = 100.0 * static_cast<double>(correct) / static_cast<double>(data.size());
        if (rep.achieved_pct >= params.threshold_pct) {
            rep.converged = true;
            break;
        }
        rising_epochs = (epoch > 1 && sse > prev_sse) ? rising_epochs + 1 : 0;
        if (rising_epochs >= 10)
            throw ConvergenceError("LMS training diverging: epoch error increased for 10 "
                                   "consecutive epochs",
                                   rep.achieved_pct, epoch);
        prev_sse = sse;
    }
    model.trained = true;
    if (report) *report = rep;
    return model;
}

BayesModel train_bayes(const TrainingSet& data, double smoothing) {
    if (data.items.empty()) throw DataError("empty training set");
    if (smoothing <= 0.0) throw DataError("Bayes smoothing must be positive");
    std::vector<std::size_t> count_yes(data.dim, 0), count_no(data.dim, 0);
    std::size_t n_yes = 0, n_no = 0;
    for (const auto& item : data.items) {
        check_dim(data.dim, item.vec);
        auto& counts = item.label == Label::Yes ? count_yes : count_no;
        (item.label == Label::Yes ? n_yes : n_no)++;
        for (auto i : item.vec.active) ++counts[i];
    }
    BayesModel model;
    model.smoothing = smoothing;
    model.log_likelihood_ratio.resize(data.dim);
    double denom_yes = static_cast<double>(n_yes) + 2.0 * smoothing;
    double denom_no = static_cast<double>(n_no) + 2.0 * smoothing;
    for (std::size_t i = 0; i < data.dim; ++i) {
        double p_yes = (static_cast<double>(count_yes[i]) + smoothing) / denom_yes;
        double p_no = (static_cast<double>(count_no[i]) + smoothing) / denom_no;
        model.log_likelihood_ratio[i] = std::log(p_yes / p_no);
    }
    model.trained = true;
    return model;
}

// --- model file format -------------------------------------------------

namespace {

void write_sparse(std::ostream& out, const char* name, const std::vector<double>& w,
                  const std::vector<std::uint8_t>* enabled) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (enabled ? enabled->at(i) != 0 : w[i] != 0.0) ++count;
    out << name << ' ' << count << '\n';
    for (std::size_t i = 0; i < w.size(); ++i)
        if (enabled ? enabled->at(i) != 0 : w[i] != 0.0)
            out << i << '\t' << fmt_weight(w[i]) << '\n';
}

void read_sparse(std::istream& in, const char* name, std::size_t dim, std::vector<double>& w,
                 std::vector<std::uint8_t>* enabled) {
    std::string key;
    std::size_t count = 0;
    if (!(in >> key >> count) || key != name)
        throw DataError("model file: expected '" + std::string(name) + "' section");
    w.assign(dim, 0.0);
    if (enabled) enabled->assign(dim, 0);
    for (std::size_t k = 0; k < count; ++k) {
        std::size_t idx;
        double val;
        if (!(in >> idx >> val) || idx >= dim) throw DataError("model file: bad weight entry");
        w[idx] = val;
        if (enabled) (*enabled)[idx] = 1;
    }
}

}  // namespace

void PerceptronModel::save(std::ostream& out) const {
    out << "bias " << fmt_weight(bias) << '\n';
    write_sparse(out, "weights", w, nullptr);
}

void HodyneModel::save(std::ostream& out) const {
    write_sparse(out, "yes", w_yes, &enabled_yes);
    write_sparse(out, "no", w_no, &enabled_no);
}

void LmsModel::save(std::ostream& out) const {
    out << "theta " << fmt_weight(theta) << '\n';
    out << "bias " << fmt_weight(bias) << '\n';
    write_sparse(out, "weights", w, nullptr);
}

void BayesModel::save(std::ostream& out) const {
    out << "smoothing " << fmt_weight(smoothing) << '\n';
    // Log-likelihood ratios are dense (smoothing makes every entry nonzero
    // in general), but most share the never-seen value; store that once.
    double background = log_likelihood_ratio.empty() ? 0.0 : log_likelihood_ratio[0];
    std::size_t bg_count = 0;
    for (double v : log_likelihood_ratio)
        if (v == background) ++bg_count;
    if (bg_count * 2 < log_likelihood_ratio.size()) background = 0.0;
    out << "background " << fmt_weight(background) << '\n';
    std::size_t count = 0;
    for (double v : log_likelihood_ratio)
        if (v != background) ++count;
    out << "llr " << count << '\n';
    for (std::size_t i = 0; i < log_likelihood_ratio.size(); ++i)
        if (log_likelihood_ratio[i] != background)
            out << i << '\t' << fmt_weight(log_likelihood_ratio[i]) << '\n';
}

void save_model(const Model& model, TupleMode mode, std::size_t m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write model file: " + path);
    out << "subjparse-model 1\n";
    out << "kind " << model.kind() << '\n';
    out << "mode " << to_string(mode) << '\n';
    out << "m " << m << '\n';
    out << "dim " << model.dim() << '\n';
    model.save(out);
    if (!out) throw DataError("error writing model file: " + path);
}

std::unique_ptr<Model> load_model(std::istream& in, TupleMode* mode_out, std::size_t* m_out) {
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != "subjparse-model" || version != 1)
        throw DataError("not a subjparse model file (bad header)");
    std::string key, kind, mode_str;
    std::size_t m = 0, dim = 0;
    if (!(in >> key >> kind) || key != "kind") throw DataError("model file: missing kind");
    if (!(in >> key >> mode_str) || key != "mode") throw DataError("model file: missing mode");
    if (!(in >> key >> m) || key != "m") throw DataError("model file: missing m");
    if (!(in >> key >> dim) || key != "dim") throw DataError("model file: missing dim");
    if (mode_out) *mode_out = tuple_mode_from_string(mode_str);
    if (m_out) *m_out = m;

    if (kind == "perceptron") {
        auto model = std::make_unique<PerceptronModel>();
        if (!(in >> key >> model->bias) || key != "bias")
            throw DataError("model file: missing bias");
        read_sparse(in, "weights", dim, model->w, nullptr);
        model->trained = true;
        return model;
    }
    if (kind == "hodyne") {
        auto model = std::make_unique<HodyneModel>();
        read_sparse(in, "yes", dim, model->w_yes, &model->enabled_yes);
        read_sparse(in, "no", dim, model->w_no, &model->enabled_no);
        model->trained = true;
        return model;
    }
    if (kind == "lms") {
        auto model = std::make_unique<LmsModel>();
        if (!(in >> key >> model->theta) || key != "theta")
            throw DataError("model file: missing theta");
        if (!(in >> key >> model->bias) || key != "bias")
            throw DataError("model file: missing bias");
        read_sparse(in, "weights", dim, model->w, nullptr);
        model->trained = true;
        return model;
    }
    if (kind == "bayes") {
        auto model = std::make_unique<BayesModel>();
        double background = 0.0;
        if (!(in >> key >> model->smoothing) || key != "smoothing")
            throw DataError("model file: missing smoothing");
        if (!(in >> key >> background) || key != "background")
            throw DataError("model file: missing background");
        std::string section;
        std::size_t count = 0;
        if (!(in >> section >> count) || section != "llr")
            throw DataError("model file: missing llr section");
        model->log_likelihood_ratio.assign(dim, background);
        for (std::size_t k = 0; k < count; ++k) {
            std::size_t idx;
            double val;
            if (!(in >> idx >> val) || idx >= dim) throw DataError("model file: bad llr entry");
            model->log_likelihood_ratio[idx] = val;
        }
        model->trained = true;
        return model;
    }
    throw DataError("model file: unknown model kind: " + kind);
}

std::unique_ptr<Model> load_model(const std::string& path, TupleMode* mode_out,
                                  std::size_t* m_out) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model file: " + path);
    return load_model(in, mode_out, m_out);
}

}  // namespace subjparse
