#include "mediatone/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "mediatone/errors.hpp"
#include "mediatone/io.hpp"

namespace mediatone {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log(1 + exp(z)) - y*z without overflow
double stable_nll(double z, int y) {
    if (z > 0.0) {
        return (1.0 - y) * z + std::log1p(std::exp(-z));
    }
    return -y * z + std::log1p(std::exp(z));
}

void check_finite(const std::vector<double>& values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) throw NumericalInput(std::string("non-finite ") + what);
    }
}

void check_labels(const std::vector<int>& labels, std::size_t rows) {
    if (labels.size() != rows) throw std::invalid_argument("labels/rows size mismatch");
    for (int y : labels) {
        if (y != 0 && y != 1) throw std::invalid_argument("labels must be 0 or 1");
    }
}

struct Standardizer {
    std::vector<double> means;
    std::vector<double> scales;
};

// Column means and population-stddev scales; zero variance -> scale 1.
Standardizer fit_standardizer(const std::vector<double>& x, std::size_t rows,
                              std::size_t cols) {
    Standardizer s;
    s.means.assign(cols, 0.0);
    s.scales.assign(cols, 1.0);
    if (rows == 0) return s;
    for (std::size_t c = 0; c < cols; ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < rows; ++r) sum += x[r * cols + c];
        s.means[c] = sum / static_cast<double>(rows);
        double sq = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            const double d = x[r * cols + c] - s.means[c];
            sq += d * d;
        }
        const double var = sq / static_cast<double>(rows);
        if (var > 0.0) s.scales[c] = std::sqrt(var);
    }
    return s;
}

std::vector<double> apply_standardizer(const Standardizer& s, const std::vector<double>& x,
                                       std::size_t rows, std::size_t cols) {
    std::vector<double> out(x.size());
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            out[r * cols + c] = (x[r * cols + c] - s.means[c]) / s.scales[c];
        }
    }
    return out;
}

std::vector<double> slice_columns(const FeatureMatrix& matrix,
                                  const std::vector<std::size_t>& cols) {
    std::vector<double> out(matrix.rows() * cols.size());
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out[r * cols.size() + j] = matrix.at(r, cols[j]);
        }
    }
    return out;
}

}  // namespace

FeatureMatrix build_feature_matrix(const std::vector<ProportionRecord>& records,
                                   const std::vector<std::string>& topics,
                                   const std::vector<ColumnId>& columns,
                                   const std::function<void(const std::string&)>& warn) {
    std::map<std::string, std::size_t> topic_row;
    for (std::size_t i = 0; i < topics.size(); ++i) topic_row.emplace(topics[i], i);
    std::map<std::string, std::size_t> column_index;
    for (std::size_t i = 0; i < columns.size(); ++i) column_index.emplace(columns[i].name(), i);

    const std::size_t cols = columns.size();
    std::vector<double> values(topics.size() * cols, 0.0);
    std::vector<unsigned char> observed(topics.size() * cols, 0);
    for (const auto& record : records) {
        auto rt = topic_row.find(record.topic);
        if (rt == topic_row.end()) continue;
        auto rc = column_index.find(record.source + "|" + record.feature_id);
        if (rc == column_index.end()) continue;
        values[rt->second * cols + rc->second] = record.proportion;
        observed[rt->second * cols + rc->second] = 1;
    }

    std::vector<std::size_t> usable;
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t n = 0;
        double sum = 0.0;
        for (std::size_t r = 0; r < topics.size(); ++r) {
            if (observed[r * cols + c]) {
                ++n;
                sum += values[r * cols + c];
            }
        }
        if (n == 0) {
            warn("column " + columns[c].name() + " has no observations, dropping");
            continue;
        }
        const double mean = sum / static_cast<double>(n);
        for (std::size_t r = 0; r < topics.size(); ++r) {
            if (!observed[r * cols + c]) values[r * cols + c] = mean;
        }
        usable.push_back(c);
    }
    if (usable.empty()) throw EmptyMatrix("no usable feature columns");

    FeatureMatrix matrix;
    matrix.topics = topics;
    matrix.columns.reserve(usable.size());
    matrix.values.resize(topics.size() * usable.size());
    matrix.observed.resize(topics.size() * usable.size());
    for (std::size_t j = 0; j < usable.size(); ++j) {
        matrix.columns.push_back(columns[usable[j]]);
        for (std::size_t r = 0; r < topics.size(); ++r) {
            matrix.values[r * usable.size() + j] = values[r * cols + usable[j]];
            matrix.observed[r * usable.size() + j] = observed[r * cols + usable[j]];
        }
    }
    return matrix;
}

double logistic_loss(const std::vector<double>& x, std::size_t rows, std::size_t cols,
                     const std::vector<int>& y, const std::vector<double>& weights,
                     double intercept, double lambda) {
    double loss = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        double z = intercept;
        for (std::size_t c = 0; c < cols; ++c) z += x[r * cols + c] * weights[c];
        loss += stable_nll(z, y[r]);
    }
    loss /= static_cast<double>(rows);
    double reg = 0.0;
    for (double w : weights) reg += w * w;
    return loss + 0.5 * lambda * reg;
}

void logistic_gradient(const std::vector<double>& x, std::size_t rows, std::size_t cols,
                       const std::vector<int>& y, const std::vector<double>& weights,
                       double intercept, double lambda, std::vector<double>& grad_weights,
                       double& grad_intercept) {
    grad_weights.assign(cols, 0.0);
    grad_intercept = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        double z = intercept;
        for (std::size_t c = 0; c < cols; ++c) z += x[r * cols + c] * weights[c];
        const double residual = sigmoid(z) - static_cast<double>(y[r]);
        for (std::size_t c = 0; c < cols; ++c) grad_weights[c] += residual * x[r * cols + c];
        grad_intercept += residual;
    }
    const double inv = 1.0 / static_cast<double>(rows);
    for (std::size_t c = 0; c < cols; ++c) {
        grad_weights[c] = grad_weights[c] * inv + lambda * weights[c];
    }
    grad_intercept *= inv;
}

LogisticFit minimize_logistic(const std::vector<double>& x, std::size_t rows, std::size_t cols,
                              const std::vector<int>& y, const LogisticOptions& opt) {
    if (rows == 0) throw EmptyMatrix("no training rows");
    check_finite(x, "feature value");
    check_labels(y, rows);

    LogisticFit fit;
    fit.weights.assign(cols, 0.0);
    fit.intercept = 0.0;

    std::vector<double> grad(cols, 0.0);
    double grad_b = 0.0;
    std::vector<double> candidate(cols, 0.0);
    for (int iter = 0; iter < opt.max_iter; ++iter) {
        const double loss = logistic_loss(x, rows, cols, y, fit.weights, fit.intercept,
                                          opt.lambda);
        logistic_gradient(x, rows, cols, y, fit.weights, fit.intercept, opt.lambda, grad,
                          grad_b);
        double gmax = std::abs(grad_b);
        double g2 = grad_b * grad_b;
        for (double g : grad) {
            gmax = std::max(gmax, std::abs(g));
            g2 += g * g;
        }
        if (gmax < opt.tol) {
            fit.meta.converged = true;
            break;
        }
        double step = 1.0;
        bool accepted = false;
        while (step > 1e-20) {
            for (std::size_t c = 0; c < cols; ++c) {
                candidate[c] = fit.weights[c] - step * grad[c];
            }
            const double cand_b = fit.intercept - step * grad_b;
            const double cand_loss = logistic_loss(x, rows, cols, y, candidate, cand_b,
                                                   opt.lambda);
            if (cand_loss <= loss - 1e-4 * step * g2) {
                fit.meta.loss_trace.push_back(loss);
                fit.weights = candidate;
                fit.intercept = cand_b;
                fit.meta.iterations = iter + 1;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // no descent step representable; leave converged=false
    }
    fit.meta.final_loss = logistic_loss(x, rows, cols, y, fit.weights, fit.intercept,
                                        opt.lambda);
    return fit;
}

std::vector<std::size_t> select_features(const FeatureMatrix& matrix,
                                         const std::vector<int>& labels,
                                         const SelectOptions& opt) {
    if (opt.k == 0) throw std::invalid_argument("select_features: k must be >= 1");
    if (matrix.cols() == 0) throw EmptyMatrix("select_features: matrix has no columns");
    check_labels(labels, matrix.rows());
    const auto ones = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
    if (ones == 0 || ones == labels.size()) {
        throw DegenerateLabels("both classes required for feature selection");
    }

    const std::size_t rows = matrix.rows();
    const std::size_t folds = std::max<std::size_t>(2, std::min(opt.folds, rows));

    // Pooled CV accuracy of the logistic model on this column set.
    auto cv_accuracy = [&](const std::vector<std::size_t>& cols) {
        std::size_t correct = 0;
        for (std::size_t fold = 0; fold < folds; ++fold) {
            std::vector<std::size_t> train_rows, val_rows;
            for (std::size_t r = 0; r < rows; ++r) {
                (r % folds == fold ? val_rows : train_rows).push_back(r);
            }
            if (val_rows.empty()) continue;

            std::vector<int> train_y;
            train_y.reserve(train_rows.size());
            for (auto r : train_rows) train_y.push_back(labels[r]);
            const auto train_ones =
                static_cast<std::size_t>(std::count(train_y.begin(), train_y.end(), 1));

            if (train_rows.empty() || train_ones == 0 || train_ones == train_y.size()) {
                // Degenerate training split: predict the only class seen.
                const int fixed = train_rows.empty() ? 1 : (train_ones > 0 ? 1 : 0);
                for (auto r : val_rows) {
                    if (labels[r] == fixed) ++correct;
                }
                continue;
            }

            std::vector<double> train_x(train_rows.size() * cols.size());
            for (std::size_t i = 0; i < train_rows.size(); ++i) {
                for (std::size_t j = 0; j < cols.size(); ++j) {
                    train_x[i * cols.size() + j] = matrix.at(train_rows[i], cols[j]);
                }
            }
            const auto standardizer = fit_standardizer(train_x, train_rows.size(), cols.size());
            const auto train_std =
                apply_standardizer(standardizer, train_x, train_rows.size(), cols.size());
            const auto fit = minimize_logistic(train_std, train_rows.size(), cols.size(),
                                               train_y, opt.inner);

            for (auto r : val_rows) {
                double z = fit.intercept;
                for (std::size_t j = 0; j < cols.size(); ++j) {
                    const double v = (matrix.at(r, cols[j]) - standardizer.means[j]) /
                                     standardizer.scales[j];
                    z += v * fit.weights[j];
                }
                // strict 0.5 rule: z == 0 counts wrong for both classes
                if ((labels[r] == 1 && z > 0.0) || (labels[r] == 0 && z < 0.0)) ++correct;
            }
        }
        return static_cast<double>(correct) / static_cast<double>(rows);
    };

    std::vector<std::size_t> selected;
    std::vector<bool> taken(matrix.cols(), false);
    const std::size_t want = std::min(opt.k, matrix.cols());
    while (selected.size() < want) {
        double best_acc = -1.0;
        std::size_t best_col = matrix.cols();
        for (std::size_t c = 0; c < matrix.cols(); ++c) {
            if (taken[c]) continue;
            auto candidate = selected;
            candidate.push_back(c);
            const double acc = cv_accuracy(candidate);
            if (acc > best_acc) {
                best_acc = acc;
                best_col = c;
            }
        }
        taken[best_col] = true;
        selected.push_back(best_col);
    }
    return selected;
}

ControversyModel train_logistic(const FeatureMatrix& matrix,
                                const std::vector<std::size_t>& selected,
                                const std::vector<int>& labels, const LogisticOptions& opt) {
    if (selected.empty()) throw std::invalid_argument("train_logistic: no selected columns");
    for (auto c : selected) {
        if (c >= matrix.cols()) throw std::invalid_argument("selected column out of range");
    }
    check_labels(labels, matrix.rows());
    const auto ones = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
    if (ones < 2 || labels.size() - ones < 2) {
        throw DegenerateLabels("training needs at least 2 examples per class");
    }

    const auto x = slice_columns(matrix, selected);
    check_finite(x, "feature value");
    const auto standardizer = fit_standardizer(x, matrix.rows(), selected.size());
    const auto x_std = apply_standardizer(standardizer, x, matrix.rows(), selected.size());
    const auto fit = minimize_logistic(x_std, matrix.rows(), selected.size(), labels, opt);

    ControversyModel model;
    model.selected = selected;
    for (auto c : selected) model.selected_names.push_back(matrix.columns[c].name());
    model.means = standardizer.means;
    model.scales = standardizer.scales;
    model.weights = fit.weights;
    model.intercept = fit.intercept;
    model.meta = fit.meta;
    return model;
}

std::vector<TopicScore> score_topics(const ControversyModel& model,
                                     const FeatureMatrix& matrix) {
    std::map<std::string, std::size_t> column_index;
    for (std::size_t i = 0; i < matrix.cols(); ++i) {
        column_index.emplace(matrix.columns[i].name(), i);
    }
    std::vector<std::size_t> cols;
    cols.reserve(model.selected_names.size());
    for (const auto& name : model.selected_names) {
        auto it = column_index.find(name);
        if (it == column_index.end()) {
            throw ColumnMissing("matrix lacks model column: " + name);
        }
        cols.push_back(it->second);
    }
    std::vector<TopicScore> scores;
    scores.reserve(matrix.rows());
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        double z = model.intercept;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            z += model.weights[j] * (matrix.at(r, cols[j]) - model.means[j]) / model.scales[j];
        }
        const double score = std::clamp(sigmoid(z), 1e-15, 1.0 - 1e-15);
        scores.push_back({matrix.topics[r], score});
    }
    return scores;
}

std::vector<ErrorReportRow> error_report(
    const std::vector<TopicScore>& scores, const std::map<std::string, Klass>& labels,
    const std::map<std::string, double>& user_scores) {
    std::vector<ErrorReportRow> rows;
    rows.reserve(scores.size());
    for (const auto& ts : scores) {
        ErrorReportRow row;
        row.topic = ts.topic;
        row.classifier_score = ts.score;
        auto lt = labels.find(ts.topic);
        if (lt != labels.end()) row.klass = lt->second;
        auto ut = user_scores.find(ts.topic);
        if (ut != user_scores.end()) row.user_score = ut->second;
        if (row.klass == Klass::C3) {
            row.misclassified = ts.score <= 0.5;
        } else if (row.klass == Klass::C0) {
            row.misclassified = ts.score >= 0.5;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_model(std::ostream& out, const ControversyModel& model) {
    out << "mediatone_model\t1\n";
    out << "k\t" << model.selected_names.size() << '\n';
    for (std::size_t i = 0; i < model.selected_names.size(); ++i) {
        out << "column\t" << i << '\t' << model.selected_names[i] << '\n';
        out << "mean\t" << i << '\t' << fmt_double(model.means[i]) << '\n';
        out << "scale\t" << i << '\t' << fmt_double(model.scales[i]) << '\n';
        out << "weight\t" << i << '\t' << fmt_double(model.weights[i]) << '\n';
    }
    out << "intercept\t" << fmt_double(model.intercept) << '\n';
    out << "iterations\t" << model.meta.iterations << '\n';
    out << "final_loss\t" << fmt_double(model.meta.final_loss) << '\n';
    out << "converged\t" << (model.meta.converged ? "true" : "false") << '\n';
}

void write_model(const std::filesystem::path& path, const ControversyModel& model) {
    auto out = open_output(path);
    write_model(out, model);
}

ControversyModel read_model(std::istream& in) {
    ControversyModel model;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty model file");
    chomp(line);
    if (line != "mediatone_model\t1") throw ParseError("unrecognized model header: " + line);

    std::size_t k = 0;
    bool have_k = false;
    auto need_index = [&](const std::vector<std::string_view>& fields) {
        const auto i = static_cast<std::size_t>(parse_int64(fields[1]));
        if (!have_k || i >= k) throw ParseError("model index out of range");
        return i;
    };
    while (std::getline(in, line)) {
        chomp(line);
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (fields[0] == "k" && fields.size() == 2) {
            k = static_cast<std::size_t>(parse_int64(fields[1]));
            if (k == 0) throw ParseError("model k must be >= 1");
            model.selected_names.assign(k, "");
            model.means.assign(k, 0.0);
            model.scales.assign(k, 1.0);
            model.weights.assign(k, 0.0);
            have_k = true;
        } else if (fields[0] == "column" && fields.size() == 3) {
            model.selected_names[need_index(fields)] = std::string(fields[2]);
        } else if (fields[0] == "mean" && fields.size() == 3) {
            model.means[need_index(fields)] = parse_double(fields[2]);
        } else if (fields[0] == "scale" && fields.size() == 3) {
            model.scales[need_index(fields)] = parse_double(fields[2]);
        } else if (fields[0] == "weight" && fields.size() == 3) {
            model.weights[need_index(fields)] = parse_double(fields[2]);
        } else if (fields[0] == "intercept" && fields.size() == 2) {
            model.intercept = parse_double(fields[1]);
        } else if (fields[0] == "iterations" && fields.size() == 2) {
            model.meta.iterations = static_cast<int>(parse_int64(fields[1]));
        } else if (fields[0] == "final_loss" && fields.size() == 2) {
            model.meta.final_loss = parse_double(fields[1]);
        } else if (fields[0] == "converged" && fields.size() == 2) {
            model.meta.converged = fields[1] == "true";
        } else {
            throw ParseError("bad model line: " + line);
        }
    }
    if (!have_k) throw ParseError("model file missing k");
    for (const auto& name : model.selected_names) {
        if (name.empty()) throw ParseError("model file missing a column name");
    }
    return model;
}

ControversyModel read_model(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_model(in);
}

void write_scores_csv(std::ostream& out, const std::vector<ErrorReportRow>& rows) {
    out << "topic,klass,user_score,classifier_score,misclassified\n";
    for (const auto& r : rows) {
        out << r.topic << ',' << to_string(r.klass) << ','
            << (r.user_score ? fmt_double(*r.user_score) : std::string()) << ','
            << fmt_double(r.classifier_score) << ',' << (r.misclassified ? "true" : "false")
            << '\n';
    }
}

void write_scores_csv(const std::filesystem::path& path,
                      const std::vector<ErrorReportRow>& rows) {
    auto out = open_output(path);
    write_scores_csv(out, rows);
}

}  // namespace mediatone
