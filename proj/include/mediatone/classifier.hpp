#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mediatone/scoring.hpp"
#include "mediatone/words.hpp"

namespace mediatone {

struct ColumnId {
    std::string source;
    std::string feature_id;

    std::string name() const { return source + "|" + feature_id; }
    friend bool operator==(const ColumnId&, const ColumnId&) = default;
};

struct FeatureMatrix {
    std::vector<std::string> topics;
    std::vector<ColumnId> columns;
    std::vector<double> values;         // row-major topics x columns, imputed
    std::vector<unsigned char> observed;  // 1 where a record backed the cell

    std::size_t rows() const { return topics.size(); }
    std::size_t cols() const { return columns.size(); }
    double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
    bool is_observed(std::size_t r, std::size_t c) const { return observed[r * cols() + c]; }
};

// Pivot records into topics x columns; masked cells take the column mean
// over observed cells; fully unobserved columns are dropped via warn.
// Zero usable columns -> EmptyMatrix.
FeatureMatrix build_feature_matrix(const std::vector<ProportionRecord>& records,
                                   const std::vector<std::string>& topics,
                                   const std::vector<ColumnId>& columns,
                                   const std::function<void(const std::string&)>& warn);

struct LogisticOptions {
    double lambda = 1e-3;  // L2 on weights, intercept unpenalized
    double tol = 1e-6;     // gradient infinity-norm stop
    int max_iter = 10000;
};

struct TrainingMeta {
    int iterations = 0;
    double final_loss = 0.0;
    bool converged = false;
    std::vector<double> loss_trace;  // loss before each accepted step; not serialized
};

// Mean negative log-likelihood plus (lambda/2)*||w||^2 on pre-standardized
// row-major data. Exposed for finite-difference checks.
double logistic_loss(const std::vector<double>& x, std::size_t rows, std::size_t cols,
                     const std::vector<int>& y, const std::vector<double>& weights,
                     double intercept, double lambda);
void logistic_gradient(const std::vector<double>& x, std::size_t rows, std::size_t cols,
                       const std::vector<int>& y, const std::vector<double>& weights,
                       double intercept, double lambda, std::vector<double>& grad_weights,
                       double& grad_intercept);

struct LogisticFit {
    std::vector<double> weights;
    double intercept = 0.0;
    TrainingMeta meta;
};

// Full-batch gradient descent with Armijo backtracking from zero init.
LogisticFit minimize_logistic(const std::vector<double>& x, std::size_t rows, std::size_t cols,
                              const std::vector<int>& y, const LogisticOptions& opt);

struct SelectOptions {
    std::size_t k = 5;
    std::size_t folds = 5;
    LogisticOptions inner{1e-3, 1e-6, 500};  // shorter budget inside CV
};

// Greedy forward selection by pooled cross-validated accuracy; fold of row i
// is i mod folds; ties keep the lower column index. Returns min(k, cols)
// indices in selection order. Single-class labels -> DegenerateLabels.
std::vector<std::size_t> select_features(const FeatureMatrix& matrix,
                                         const std::vector<int>& labels,
                                         const SelectOptions& opt);

struct ControversyModel {
    std::vector<std::size_t> selected;       // indices into the training matrix
    std::vector<std::string> selected_names; // ColumnId names, selection order
    std::vector<double> means;               // standardization, per selected column
    std::vector<double> scales;
    std::vector<double> weights;
    double intercept = 0.0;
    TrainingMeta meta;
};

ControversyModel train_logistic(const FeatureMatrix& matrix,
                                const std::vector<std::size_t>& selected,
                                const std::vector<int>& labels,
                                const LogisticOptions& opt = {});

struct TopicScore {
    std::string topic;
    double score;  // in (0,1)
};

// Scores every matrix row; selected columns are found by name, a missing one
// raises ColumnMissing.
std::vector<TopicScore> score_topics(const ControversyModel& model,
                                     const FeatureMatrix& matrix);

struct ErrorReportRow {
    std::string topic;
    Klass klass = Klass::Unlabeled;
    std::optional<double> user_score;
    double classifier_score = 0.5;
    bool misclassified = false;  // strict 0.5 rule; 0.5 is an error both ways
};

std::vector<ErrorReportRow> error_report(
    const std::vector<TopicScore>& scores, const std::map<std::string, Klass>& labels,
    const std::map<std::string, double>& user_scores);

// Plain-text key-value model file.
void write_model(std::ostream& out, const ControversyModel& model);
void write_model(const std::filesystem::path& path, const ControversyModel& model);
ControversyModel read_model(std::istream& in);
ControversyModel read_model(const std::filesystem::path& path);

// CSV: topic,klass,user_score,classifier_score,misclassified
void write_scores_csv(std::ostream& out, const std::vector<ErrorReportRow>& rows);
void write_scores_csv(const std::filesystem::path& path,
                      const std::vector<ErrorReportRow>& rows);

}  // namespace mediatone
