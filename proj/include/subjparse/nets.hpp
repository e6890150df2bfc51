#ifndef SUBJPARSE_NETS_HPP
#define SUBJPARSE_NETS_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "subjparse/encoder.hpp"

namespace subjparse {

enum class Label : std::uint8_t { No = 0, Yes = 1 };

struct TrainingItem {
    SparseBinaryVector vec;
    Label label = Label::No;
    int sentence_id = 0;
};

struct TrainingSet {
    std::vector<TrainingItem> items;
    std::size_t dim = 0;

    std::size_t size() const { return items.size(); }
};

struct TrainParams {
    double threshold_pct = 99.0;  // stop once % strings correct reaches this
    int max_epochs = 1000;
    double learning_rate = 0.1;  // Perceptron, LMS
    double theta = 0.5;          // LMS target threshold
    std::uint64_t rng_seed = 1;
};

struct TrainReport {
    bool converged = false;
    double achieved_pct = 0.0;
    int epochs = 0;
};

class Model {
public:
    virtual ~Model() = default;
    virtual double score(const SparseBinaryVector& v) const = 0;  // the Gamma measure
    // Classification rule used during training (LMS requires the threshold
    // to be passed; the others use the sign of Gamma).
    virtual bool classify_correct(const SparseBinaryVector& v, Label label) const;
    virtual std::size_t dim() const = 0;
    virtual std::string kind() const = 0;
    virtual void save(std::ostream& out) const = 0;
};

class PerceptronModel : public Model {
public:
    std::vector<double> w;
    double bias = 0.0;
    bool trained = false;

    double score(const SparseBinaryVector& v) const override;
    std::size_t dim() const override { return w.size(); }
    std::string kind() const override { return "perceptron"; }
    void save(std::ostream& out) const override;
};

/// Two-output net with asymmetric, lazily enabled connectivity. A link is
/// enabled iff its input index appeared in at least one training string of
/// that class; disabled links score 0.
class HodyneModel : public Model {
public:
    std::vector<double> w_yes, w_no;
    std::vector<std::uint8_t> enabled_yes, enabled_no;
    bool trained = false;

    double z_yes(const SparseBinaryVector& v) const;
    double z_no(const SparseBinaryVector& v) const;
    double score(const SparseBinaryVector& v) const override;  // z0 - z1
    std::size_t dim() const override { return w_yes.size(); }
    std::string kind() const override { return "hodyne"; }
    void save(std::ostream& out) const override;
};

class LmsModel : public Model {
public:
    std::vector<double> w;
    double bias = 0.0;
    double theta = 0.5;
    bool trained = false;

    double net(const SparseBinaryVector& v) const;
    double score(const SparseBinaryVector& v) const override;  // bipolar(net)
    bool classify_correct(const SparseBinaryVector& v, Label label) const override;
    std::size_t dim() const override { return w.size(); }
    std::string kind() const override { return "lms"; }
    void save(std::ostream& out) const override;

    static double bipolar(double x);  // odd squashing onto (-1, +1)
};

/// Naive Bayes over active tuple features; Gamma is the log posterior odds
/// with the per-sentence 1/n vs (n-1)/n prior supplied at scoring time.
class BayesModel : public Model {
public:
    std::vector<double> log_likelihood_ratio;  // per feature, yes vs no
    double smoothing = 1.0;
    bool trained = false;

    // score() uses an even prior (n = 2); score_with_prior folds in 1/n.
    double score(const SparseBinaryVector& v) const override;
    double score_with_prior(const SparseBinaryVector& v, std::size_t n_candidates) const;
    std::size_t dim() const override { return log_likelihood_ratio.size(); }
    std::string kind() const override { return "bayes"; }
    void save(std::ostream& out) const override;
};

// One application of the Hodyne saturating update rule; requires w > 0.
double hodyne_update(double w, int delta);

PerceptronModel train_perceptron(const TrainingSet& data, const TrainParams& params,
                                 TrainReport* report = nullptr);
HodyneModel train_hodyne(const TrainingSet& data, const TrainParams& params,
                         TrainReport* report = nullptr);
LmsModel train_lms(const TrainingSet& data, const TrainParams& params,
                   TrainReport* report = nullptr);
BayesModel train_bayes(const TrainingSet& data, double smoothing);

// Fraction (percent) of training strings whose classification matches their
// label under the model's correctness rule.
double training_accuracy_pct(const Model& model, const TrainingSet& data);

// Versioned text model file; round-trips decimal-serialized weights exactly.
void save_model(const Model& model, TupleMode mode, std::size_t m, const std::string& path);
std::unique_ptr<Model> load_model(const std::string& path, TupleMode* mode_out = nullptr,
                                  std::size_t* m_out = nullptr);
std::unique_ptr<Model> load_model(std::istream& in, TupleMode* mode_out = nullptr,
                                  std::size_t* m_out = nullptr);

}  // namespace subjparse

#endif
