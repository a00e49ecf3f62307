// Copyright 2026 The edrlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "edrlab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <set>
#include <thread>

#include "edrlab/edr.hpp"
#include "edrlab/error.hpp"
#include "edrlab/estimators.hpp"
#include "edrlab/gaussian_cv.hpp"
#include "edrlab/grid.hpp"
#include "edrlab/qubit_models.hpp"
#include "edrlab/random_models.hpp"

namespace edrlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kExact = 1e-12;

struct Run {
    std::uint64_t seed = 7;
    unsigned jobs = 1;
    Tolerances tol = default_tolerances();
};

using ScenarioFn = std::function<ScenarioReport(const Config &, const Run &)>;

// Evaluates f(0..n-1) on `jobs` threads. Results are stored by index, and the
// exception of the lowest failing index is rethrown, so the outcome does not
// depend on the thread count.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, unsigned jobs, F f) {
    std::vector<std::optional<T>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, n));
    auto work = [&](std::size_t w) {
        for (std::size_t i = w; i < n; i += workers) {
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back(work, w);
        }
        for (auto &t : threads) {
            t.join();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    std::vector<T> out;
    out.reserve(n);
    for (auto &s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

double positive(const Config &cfg, const std::string &key, double fallback) {
    double v = cfg.get_double(key, fallback);
    if (!(v > 0.0)) {
        throw Error(ErrorKind::Config, "config key '" + key + "' must be positive");
    }
    return v;
}

std::size_t count(const Config &cfg, const std::string &key, std::uint64_t fallback) {
    return static_cast<std::size_t>(cfg.get_uint(key, fallback));
}

Cell num(double x) { return Cell(x); }
Cell integer(std::size_t x) { return Cell(static_cast<std::int64_t>(x)); }

std::vector<Cell> edr_cells(const EdrReport &r) {
    return {num(r.epsilon_A),        num(r.eta_B),
            num(r.sigma_A),          num(r.sigma_B),
            num(r.commutator_bound), num(r.correlation_term),
            num(r.heisenberg.lhs),   Cell(r.heisenberg.satisfied),
            num(r.universal.lhs),    Cell(r.universal.satisfied),
            num(r.ozawa.lhs),        Cell(r.ozawa.satisfied)};
}

const std::vector<std::string> kEdrColumns = {
    "epsilon_A",      "eta_B",
    "sigma_A",        "sigma_B",
    "bound",          "correlation_term",
    "lhs_heisenberg", "heisenberg_satisfied",
    "lhs_universal",  "universal_satisfied",
    "lhs_ozawa",      "ozawa_satisfied"};

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string> &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

void append(std::vector<Cell> &a, const std::vector<Cell> &b) { a.insert(a.end(), b.begin(), b.end()); }

// ---------------------------------------------------------------------------
// Continuous-variable scenarios

struct CvRow {
    double epsilon = 0.0;
    double eta = 0.0;
    double product = 0.0;
    EdrReport report;
};

CvRow cv_row(cv::CvModelKind kind, const cv::GaussianState4 &state, const Tolerances &tol) {
    CvRow row;
    row.report = cv::edr_product_report(kind, state, tol);
    row.epsilon = row.report.epsilon_A;
    row.eta = row.report.eta_B;
    row.product = row.epsilon * row.eta;
    return row;
}

const std::vector<std::string> kCvColumns = {
    "epsilon_Q",     "eta_P",           "product",       "bound",
    "heisenberg_satisfied", "lhs_ozawa", "ozawa_satisfied", "lhs_universal",
    "universal_satisfied"};

std::vector<Cell> cv_cells(const CvRow &r) {
    return {num(r.epsilon),
            num(r.eta),
            num(r.product),
            num(r.report.commutator_bound),
            Cell(r.report.heisenberg.satisfied),
            num(r.report.ozawa.lhs),
            Cell(r.report.ozawa.satisfied),
            num(r.report.universal.lhs),
            Cell(r.report.universal.satisfied)};
}

ScenarioReport von_neumann_edr(const Config &cfg, const Run &run) {
    const double hbar = positive(cfg, "hbar", 1.0);
    const auto widths = cfg.get_doubles("widths", {0.25, 0.5, 1.0, 2.0});
    const auto excess = cfg.get_doubles("excess", {1.0, 2.0});
    const std::size_t instances = count(cfg, "instances", 1000);
    const std::size_t grid_points = count(cfg, "grid_points", 2048);
    const double psi_mean = cfg.get_double("psi_mean", 0.5);
    const double psi_var = positive(cfg, "psi_var", 1.0);
    const double xi_mean = cfg.get_double("xi_mean", 0.0);
    const double xi_var = positive(cfg, "xi_var", 1.0);
    for (double w : widths) {
        if (!(w > 0.0)) {
            throw Error(ErrorKind::Config, "config key 'widths' must hold positive values");
        }
    }
    for (double e : excess) {
        if (!(e >= 1.0)) {
            throw Error(ErrorKind::Config, "config key 'excess' must hold values >= 1");
        }
    }
    if (grid_points < 2) {
        throw Error(ErrorKind::Config, "config key 'grid_points' must be at least 2");
    }

    ScenarioReport r;
    r.inputs = Json{{"hbar", hbar},       {"widths", widths},         {"excess", excess},
                    {"instances", instances}, {"grid_points", grid_points}, {"psi_mean", psi_mean},
                    {"psi_var", psi_var}, {"xi_mean", xi_mean},       {"xi_var", xi_var}};
    r.table.parameter = "probe_var_q";
    r.table.columns = concat({"probe_var_q", "excess", "minimal"}, kCvColumns);

    const double half = hbar / 2.0;
    double sweep_min_margin = std::numeric_limits<double>::infinity();
    double sweep_equality = 0.0;
    bool sweep_satisfied = true;
    const cv::ModeMoments object = cv::ModeMoments::minimal(half, hbar);
    for (double s : widths) {
        for (double e : excess) {
            cv::ModeMoments probe;
            probe.var_q = s;
            probe.var_p = e * hbar * hbar / (4.0 * s);
            CvRow row = cv_row(cv::CvModelKind::VonNeumann,
                               cv::GaussianState4::product(object, probe, hbar, run.tol), run.tol);
            std::vector<Cell> cells{num(s), num(e), Cell(e == 1.0)};
            append(cells, cv_cells(row));
            r.table.add_row(std::move(cells));
            sweep_min_margin = std::min(sweep_min_margin, row.product - half);
            sweep_satisfied = sweep_satisfied && row.report.heisenberg.satisfied;
            if (e == 1.0) {
                sweep_equality = std::max(sweep_equality, std::abs(row.product - half));
            }
        }
    }
    r.check("sweep-product-bound", 2, sweep_satisfied && sweep_min_margin >= -kExact,
            Json{{"min_product_minus_bound", sweep_min_margin}});
    r.check("sweep-minimal-equality", 2, sweep_equality <= kExact,
            Json{{"max_abs_product_minus_bound", sweep_equality}});

    struct Sample {
        double product;
        bool satisfied;
        double equality;
    };
    auto samples = parallel_map<Sample>(instances, run.jobs, [&](std::size_t i) {
        Rng rng(derive_seed(run.seed, i));
        cv::GaussianState4 state = random_gaussian_state(rng, hbar, false);
        CvRow row = cv_row(cv::CvModelKind::VonNeumann, state, run.tol);
        std::uniform_real_distribution<double> log_width(-2.0, 2.0);
        cv::ModeMoments object_mode;
        object_mode.mean_q = state.mean()(cv::kQ);
        object_mode.mean_p = state.mean()(cv::kP);
        object_mode.var_q = state.cov()(cv::kQ, cv::kQ);
        object_mode.var_p = state.cov()(cv::kP, cv::kP);
        object_mode.cov_qp = state.cov()(cv::kQ, cv::kP);
        cv::GaussianState4 minimal = cv::GaussianState4::product(
            object_mode, cv::ModeMoments::minimal(std::exp(log_width(rng)), hbar), hbar, run.tol);
        CvRow eq = cv_row(cv::CvModelKind::VonNeumann, minimal, run.tol);
        return Sample{row.product, row.report.heisenberg.satisfied, std::abs(eq.product - half)};
    });
    double ens_min = std::numeric_limits<double>::infinity();
    double ens_eq = 0.0;
    std::size_t ens_satisfied = 0;
    for (const Sample &s : samples) {
        ens_min = std::min(ens_min, s.product);
        ens_eq = std::max(ens_eq, s.equality);
        ens_satisfied += s.satisfied ? 1 : 0;
    }
    r.results["ensemble"] = Json{{"instances", instances},
                                 {"min_product", instances ? ens_min : kNaN},
                                 {"heisenberg_satisfied", ens_satisfied},
                                 {"max_minimal_probe_equality_residual", ens_eq}};
    r.check("ensemble-product-bound", 2,
            ens_satisfied == instances && (instances == 0 || ens_min >= half - kExact),
            Json{{"min_product", instances ? ens_min : kNaN}, {"satisfied", ens_satisfied}});
    r.check("ensemble-minimal-equality", 2, ens_eq <= kExact,
            Json{{"max_abs_product_minus_bound", ens_eq}});

    // Grid quadrature of the meter distribution against the moment engine.
    const double psi_sd = std::sqrt(psi_var), xi_sd = std::sqrt(xi_var);
    const double lo = std::min(psi_mean - 12.0 * psi_sd, xi_mean - 12.0 * xi_sd);
    const double hi = std::max(psi_mean + 12.0 * psi_sd, xi_mean + 12.0 * xi_sd);
    const auto grid = cv::UniformGrid::spanning(lo, hi, grid_points);
    const auto dist = cv::von_neumann_outcome_distribution(cv::GridFunction::gaussian(grid, psi_mean, psi_var),
                                                           cv::GridFunction::gaussian(grid, xi_mean, xi_var));
    const auto moments = cv::GaussianState4::product(cv::ModeMoments::minimal(psi_var, hbar, psi_mean),
                                                     cv::ModeMoments::minimal(xi_var, hbar, xi_mean),
                                                     hbar, run.tol);
    const cv::Row4 meter = cv::von_neumann_transfer().row(cv::kQbar);
    const double predicted_mean = moments.mean_of(meter);
    const double predicted_var = moments.variance(meter);
    const double total = dist.total();
    const double mean = dist.mean();
    const double var = dist.variance();
    r.results["grid"] = Json{{"points", grid_points},
                             {"lo", lo},
                             {"hi", hi},
                             {"total", total},
                             {"mean", mean},
                             {"variance", var},
                             {"predicted_mean", predicted_mean},
                             {"predicted_variance", predicted_var},
                             {"probability_below_mean", dist.probability(-INFINITY, predicted_mean)}};
    r.check("grid-total-probability", 6, std::abs(total - 1.0) <= 1e-6, Json{{"total", total}});
    r.check("grid-mean", 6, std::abs(mean - predicted_mean) <= 1e-4,
            Json{{"grid", mean}, {"moments", predicted_mean}});
    r.check("grid-variance", 6, std::abs(var - predicted_var) <= 1e-4,
            Json{{"grid", var}, {"moments", predicted_var}});
    return r;
}

ScenarioReport ozawa_violation(const Config &cfg, const Run &run) {
    const double hbar = positive(cfg, "hbar", 1.0);
    const std::size_t instances = count(cfg, "instances", 1000);
    const std::size_t steps = count(cfg, "limit_steps", 20);

    ScenarioReport r;
    r.inputs = Json{{"hbar", hbar}, {"instances", instances}, {"limit_steps", steps}};
    r.table.parameter = "k";
    r.table.columns = concat({"k", "momentum_var"}, kCvColumns);

    const double half = hbar / 2.0;
    auto rows = parallel_map<CvRow>(instances, run.jobs, [&](std::size_t i) {
        Rng rng(derive_seed(run.seed, i));
        return cv_row(cv::CvModelKind::Ozawa1988, random_gaussian_state(rng, hbar, false), run.tol);
    });
    double max_eps = 0.0, max_product = 0.0;
    std::size_t violated = 0, ozawa_ok = 0, universal_ok = 0;
    for (const CvRow &row : rows) {
        max_eps = std::max(max_eps, row.epsilon);
        max_product = std::max(max_product, row.product);
        violated += (!row.report.heisenberg.satisfied && row.product < half) ? 1 : 0;
        ozawa_ok += row.report.ozawa.satisfied ? 1 : 0;
        universal_ok += row.report.universal.satisfied ? 1 : 0;
    }
    r.results["ensemble"] = Json{{"instances", instances},
                                 {"max_epsilon_Q", max_eps},
                                 {"max_product", max_product},
                                 {"heisenberg_violated", violated},
                                 {"ozawa_satisfied", ozawa_ok},
                                 {"universal_satisfied", universal_ok}};
    r.check("ensemble-zero-error", 1, max_eps <= kExact, Json{{"max_epsilon_Q", max_eps}});
    r.check("ensemble-heisenberg-violated", 1, violated == instances,
            Json{{"violated", violated}, {"instances", instances}, {"max_product", max_product}});
    r.check("ensemble-ozawa-relations-hold", 1, ozawa_ok == instances && universal_ok == instances,
            Json{{"ozawa_satisfied", ozawa_ok}, {"universal_satisfied", universal_ok}});

    std::vector<double> eta;
    double limit_eps = 0.0;
    for (std::size_t k = 0; k <= steps; ++k) {
        const double v = std::ldexp(1.0, -static_cast<int>(k));
        cv::ModeMoments mode;
        mode.var_p = v;
        mode.var_q = hbar * hbar / (4.0 * v);
        CvRow row = cv_row(cv::CvModelKind::Ozawa1988, cv::GaussianState4::product(mode, mode, hbar, run.tol),
                           run.tol);
        std::vector<Cell> cells{integer(k), num(v)};
        append(cells, cv_cells(row));
        r.table.add_row(std::move(cells));
        eta.push_back(row.eta);
        limit_eps = std::max(limit_eps, row.epsilon);
    }
    bool monotone = true;
    for (std::size_t k = 1; k < eta.size(); ++k) {
        monotone = monotone && eta[k] < eta[k - 1];
    }
    const double ratio = eta.back() / eta.front();
    const double rate = std::ldexp(1.0, -static_cast<int>(steps));
    r.check("limit-zero-error", 5, limit_eps <= kExact, Json{{"max_epsilon_Q", limit_eps}});
    r.check("limit-disturbance-decreasing", 5, monotone,
            Json{{"eta_first", eta.front()}, {"eta_last", eta.back()}});
    r.check("limit-disturbance-vanishing", 5, ratio <= std::sqrt(rate) * (1.0 + 1e-9),
            Json{{"eta_last_over_first", ratio}, {"momentum_variance_ratio", rate}});
    return r;
}

ScenarioReport kennard(const Config &cfg, const Run &run) {
    const double hbar = positive(cfg, "hbar", 1.0);
    const auto var_q = cfg.get_doubles("var_q", {0.5, 1.0, 0.25, 2.0, 0.1, 0.3});
    const auto var_p = cfg.get_doubles("var_p", {0.5, 1.0, 1.0, 0.5, 0.1, 0.5});
    const std::size_t instances = count(cfg, "instances", 1000);
    if (var_q.size() != var_p.size()) {
        throw Error(ErrorKind::Config, "config keys 'var_q' and 'var_p' must have equal length");
    }

    ScenarioReport r;
    r.inputs = Json{{"hbar", hbar}, {"var_q", var_q}, {"var_p", var_p}, {"instances", instances}};
    r.table.parameter = "case";
    r.table.columns = {"case",  "var_q",  "var_p", "sigma_Q",   "sigma_P",
                       "product", "bound", "valid", "satisfied", "equality"};

    const double floor = hbar * hbar / 4.0;
    bool valid_ok = true, rejection_ok = true, equality_ok = true;
    for (std::size_t c = 0; c < var_q.size(); ++c) {
        const double vq = var_q[c], vp = var_p[c];
        std::optional<cv::UncertaintyReport> rep;
        std::string reason;
        try {
            rep = cv::kennard_check(vq, vp, hbar, run.tol);
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::Validation) {
                throw;
            }
            reason = e.what();
        }
        const bool forbidden = vq * vp < floor;
        rejection_ok = rejection_ok && (forbidden == !rep.has_value());
        if (rep) {
            valid_ok = valid_ok && rep->satisfied;
            if (vq * vp == floor) {
                equality_ok = equality_ok && rep->equality;
            }
            r.table.add_row({integer(c), num(vq), num(vp), num(rep->sigma_A), num(rep->sigma_B),
                             num(rep->product), num(rep->bound), Cell(true), Cell(rep->satisfied),
                             Cell(rep->equality)});
        } else {
            r.table.add_row({integer(c), num(vq), num(vp), num(kNaN), num(kNaN), num(kNaN),
                             num(hbar / 2.0), Cell(false), Cell(false), Cell(false)});
            r.results["rejections"].push_back(Json{{"case", c}, {"reason", reason}});
        }
    }
    r.check("kennard-valid-states-satisfy", 4, valid_ok);
    r.check("kennard-forbidden-states-rejected", 4, rejection_ok);
    r.check("kennard-minimal-equality", 4, equality_ok);

    auto ok = parallel_map<char>(instances, run.jobs, [&](std::size_t i) {
        Rng rng(derive_seed(run.seed, i));
        cv::GaussianState4 s = random_gaussian_state(rng, hbar, false);
        return static_cast<char>(
            cv::kennard_check(s.cov()(cv::kQ, cv::kQ), s.cov()(cv::kP, cv::kP), hbar, run.tol).satisfied);
    });
    const auto satisfied = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
    r.results["ensemble"] = Json{{"instances", instances}, {"satisfied", satisfied}};
    r.check("kennard-ensemble", 4, satisfied == instances,
            Json{{"satisfied", satisfied}, {"instances", instances}});
    return r;
}

ScenarioReport arthurs_kelly(const Config &cfg, const Run &run) {
    const double hbar = positive(cfg, "hbar", 1.0);
    const std::size_t instances = count(cfg, "instances", 1000);

    ScenarioReport r;
    r.inputs = Json{{"hbar", hbar}, {"instances", instances}};
    r.table.parameter = "case";
    r.table.columns = {"case",           "label",           "sigma_MQ",        "sigma_MP",
                       "meter_product",  "meter_bound",     "meter_satisfied", "meter_equality",
                       "epsilon_Q",      "epsilon_P",       "error_product",   "error_bound",
                       "error_satisfied", "error_equality"};

    const double h = hbar / 2.0;
    cv::ModeMoments thermal;
    thermal.var_q = hbar;
    thermal.var_p = hbar;
    struct Case {
        const char *label;
        cv::ModeMoments object;
        cv::ModeMoments probe;
    };
    const std::vector<Case> cases = {
        {"all-minimal", cv::ModeMoments::minimal(h, hbar), cv::ModeMoments::minimal(h, hbar)},
        {"squeezed-object", cv::ModeMoments::minimal(0.2 * h, hbar), cv::ModeMoments::minimal(h, hbar)},
        {"thermal-object", thermal, cv::ModeMoments::minimal(h, hbar)},
    };
    std::vector<cv::ArthursKellyReport> designed;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        auto rep = cv::arthurs_kelly_check(
            cv::GaussianState4::product(cases[c].object, cases[c].probe, hbar, run.tol), run.tol);
        designed.push_back(rep);
        r.table.add_row({integer(c), Cell(std::string(cases[c].label)), num(rep.meters.sigma_A),
                         num(rep.meters.sigma_B), num(rep.meters.product), num(rep.meters.bound),
                         Cell(rep.meters.satisfied), Cell(rep.meters.equality), num(rep.errors.sigma_A),
                         num(rep.errors.sigma_B), num(rep.errors.product), num(rep.errors.bound),
                         Cell(rep.errors.satisfied), Cell(rep.errors.equality)});
    }
    const auto &minimal = designed[0];
    r.check("ak-minimal-equality", 4,
            std::abs(minimal.meters.product - hbar) <= kExact &&
                std::abs(minimal.errors.product - h) <= kExact,
            Json{{"meter_product", minimal.meters.product}, {"error_product", minimal.errors.product}});
    // Var(M_Q) = 0.1 + 0.5, Var(M_P) = 2.5 + 0.5 at hbar = 1.
    const double squeezed_expected = std::sqrt((0.2 * h + h) * (hbar * hbar / (0.8 * h) + h));
    r.check("ak-squeezed-object", 4,
            std::abs(designed[1].meters.product - squeezed_expected) <= kExact &&
                designed[1].meters.satisfied && !designed[1].meters.equality,
            Json{{"meter_product", designed[1].meters.product}, {"expected", squeezed_expected}});

    struct Sample {
        bool meters;
        bool errors;
        double meter_margin;
        double error_margin;
    };
    auto samples = parallel_map<Sample>(instances, run.jobs, [&](std::size_t i) {
        Rng rng(derive_seed(run.seed, i));
        auto rep = cv::arthurs_kelly_check(random_gaussian_state(rng, hbar, true), run.tol);
        return Sample{rep.meters.satisfied, rep.errors.satisfied, rep.meters.product - hbar,
                      rep.errors.product - h};
    });
    std::size_t meters_ok = 0, errors_ok = 0;
    double meter_margin = std::numeric_limits<double>::infinity();
    double error_margin = std::numeric_limits<double>::infinity();
    for (const Sample &s : samples) {
        meters_ok += s.meters ? 1 : 0;
        errors_ok += s.errors ? 1 : 0;
        meter_margin = std::min(meter_margin, s.meter_margin);
        error_margin = std::min(error_margin, s.error_margin);
    }
    r.results["ensemble"] = Json{{"instances", instances},
                                 {"meters_satisfied", meters_ok},
                                 {"errors_satisfied", errors_ok},
                                 {"min_meter_margin", instances ? meter_margin : kNaN},
                                 {"min_error_margin", instances ? error_margin : kNaN}};
    r.check("ak-ensemble-meters", 4, meters_ok == instances,
            Json{{"satisfied", meters_ok}, {"instances", instances}});
    r.check("ak-ensemble-errors", 4, errors_ok == instances,
            Json{{"satisfied", errors_ok}, {"instances", instances}});

    bool rejected = false;
    try {
        cv::arthurs_kelly_check(
            cv::GaussianState4::product(cv::ModeMoments::minimal(h, hbar),
                                        cv::ModeMoments::minimal(h, hbar, 0.3, 0.0), hbar, run.tol),
            run.tol);
    } catch (const Error &e) {
        rejected = e.kind() == ErrorKind::Precondition;
    }
    r.check("ak-biased-probe-rejected", 4, rejected);
    return r;
}

ScenarioReport ozawa_tau_sweep(const Config &cfg, const Run &) {
    const std::size_t points = count(cfg, "points", 101);
    ScenarioReport r;
    r.inputs = Json{{"points", points}};
    r.table.parameter = "tau_fraction";
    static const char *names[] = {"Q", "P", "Qbar", "Pbar"};
    r.table.columns = {"tau_fraction"};
    for (const char *row : names) {
        for (const char *col : names) {
            r.table.columns.push_back(std::string("S_") + row + "_" + col);
        }
    }
    for (const char *c : {"expm_residual_ozawa", "symplectic_residual_ozawa",
                          "expm_residual_von_neumann", "symplectic_residual_von_neumann"}) {
        r.table.columns.emplace_back(c);
    }

    double expm_max = 0.0, symp_max = 0.0;
    for (std::size_t k = 0; k < points; ++k) {
        const double tau = points > 1 ? static_cast<double>(k) / static_cast<double>(points - 1) : 0.0;
        const auto oz = cv::ozawa_transfer(tau);
        const auto vn = cv::von_neumann_transfer(tau);
        const double e_oz =
            (oz.matrix - cv::matrix_exponential_check(cv::CvModelKind::Ozawa1988, tau).matrix).cwiseAbs().maxCoeff();
        const double e_vn =
            (vn.matrix - cv::matrix_exponential_check(cv::CvModelKind::VonNeumann, tau).matrix).cwiseAbs().maxCoeff();
        const double s_oz = oz.symplectic_residual(), s_vn = vn.symplectic_residual();
        expm_max = std::max({expm_max, e_oz, e_vn});
        symp_max = std::max({symp_max, s_oz, s_vn});
        std::vector<Cell> cells{num(tau)};
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                cells.push_back(num(oz.matrix(i, j)));
            }
        }
        append(cells, {num(e_oz), num(s_oz), num(e_vn), num(s_vn)});
        r.table.add_row(std::move(cells));
    }
    r.check("transfer-matches-exponential", 3, expm_max <= 1e-9, Json{{"max_residual", expm_max}});
    r.check("transfer-symplectic", 3, symp_max <= 1e-10, Json{{"max_residual", symp_max}});

    const cv::Mat4 start = cv::ozawa_transfer(0.0).matrix;
    const cv::Mat4 end = cv::ozawa_transfer(1.0).matrix;
    cv::Mat4 expected_end;
    expected_end << 1, 0, -1, 0,  //
        0, 0, 0, -1,              //
        1, 0, 0, 0,               //
        0, 1, 0, 1;
    const bool endpoints = start == cv::Mat4::Identity() && end == expected_end;
    r.check("transfer-endpoints", 3, endpoints,
            Json{{"qbar_row_at_end", std::vector<double>{end(2, 0), end(2, 1), end(2, 2), end(2, 3)}},
                 {"p_row_at_end", std::vector<double>{end(1, 0), end(1, 1), end(1, 2), end(1, 3)}}});
    return r;
}

// ---------------------------------------------------------------------------
// Finite-dimensional scenarios

const std::vector<std::string> kLocalColumns = {"epsilon_bar", "eta_bar", "lhs_locally_uniform",
                                                "locally_uniform_satisfied"};

std::vector<Cell> local_cells(const EdrReport &r) {
    return {num(r.epsilon_bar.value_or(kNaN)), num(r.eta_bar.value_or(kNaN)),
            num(r.locally_uniform ? r.locally_uniform->lhs : kNaN),
            Cell(r.locally_uniform && r.locally_uniform->satisfied)};
}

ScenarioReport cnot_qubit(const Config &, const Run &run) {
    ScenarioReport r;
    r.table.parameter = "state";
    r.table.columns = concat(concat({"state"}, kEdrColumns), kLocalColumns);
    const auto mp = qubit::cnot_process();
    const auto a = qubit::pauli_z();
    const auto b = qubit::pauli_x();

    Rng rng(derive_seed(run.seed, 0));
    struct Named {
        std::string label;
        DensityState rho;
    };
    const std::vector<Named> states = {
        {"plus_i", DensityState::pure(qubit::ket_plus_i())},
        {"zero", DensityState::pure(qubit::ket0())},
        {"one", DensityState::pure(qubit::ket1())},
        {"plus", DensityState::pure(qubit::ket_plus())},
        {"minus_i", DensityState::pure(qubit::ket_minus_i())},
        {"maximally_mixed", DensityState::maximally_mixed(2)},
        {"random_pure", DensityState::pure(random_unit_vector(2, rng))},
        {"random_mixed", random_density(2, rng, 2)},
    };
    r.inputs = Json{{"A", "sigma_z"}, {"B", "sigma_x"}, {"probe", "|0>"}, {"meter", "sigma_z"}};
    bool relations = true;
    for (const auto &s : states) {
        EdrReport rep = locally_uniform_edr(mp, a, b, s.rho, run.tol);
        rep.label = s.label;
        std::vector<Cell> cells{Cell(s.label)};
        append(cells, edr_cells(rep));
        append(cells, local_cells(rep));
        r.table.add_row(std::move(cells));
        r.results["states"][s.label] = to_json(rep);
        relations = relations && rep.universal.satisfied && rep.ozawa.satisfied &&
                    rep.locally_uniform && rep.locally_uniform->satisfied &&
                    (!rep.error_free || rep.error_free->satisfied);
    }
    const Json &pi = r.results["states"]["plus_i"];
    const double eps = pi["epsilon_A"], eta = pi["eta_B"], bound = pi["commutator_bound"];
    const double lhs_ozawa = pi["lhs_ozawa"];
    const bool heis = pi["heisenberg"]["satisfied"];
    const bool oz = pi["ozawa"]["satisfied"];
    const bool uni = pi["universal"]["satisfied"];
    r.check("cnot-heisenberg-violated", 8,
            std::abs(eps) <= kExact && std::abs(bound - 1.0) <= kExact && !heis,
            Json{{"epsilon_A", eps}, {"eta_B", eta}, {"bound", bound}});
    r.check("cnot-ozawa-lhs-sqrt2", 8,
            std::abs(eta - std::sqrt(2.0)) <= kExact && std::abs(lhs_ozawa - std::sqrt(2.0)) <= kExact && oz &&
                uni,
            Json{{"eta_B", eta}, {"lhs_ozawa", lhs_ozawa}});
    r.check("cnot-relations-hold-all-states", 8, relations);
    const Json &zero = r.results["states"]["zero"];
    r.check("cnot-commuting-state-trivial", 8,
            zero["commutator_bound"].get<double>() <= kExact && zero["heisenberg"]["satisfied"].get<bool>(),
            Json{{"bound", zero["commutator_bound"]}});
    return r;
}

struct Theorem1Row {
    Theorem1Conditions conditions;
    PrecisionDiagnostics precise;
    PrecisionDiagnostics non_disturbing;
    double epsilon_bar = 0.0;
    double eta_bar = 0.0;
    std::optional<SupOracle> oracle;
};

Theorem1Row theorem1_row(const MeasuringProcess &mp, const HermitianOperator &a,
                         const HermitianOperator &b, const DensityState &rho, std::uint64_t seed,
                         std::size_t oracle_samples, const Tolerances &tol) {
    Theorem1Row row;
    row.conditions = theorem1_conditions(mp, a, rho, seed, tol);
    row.precise = is_precise(mp, a, rho, tol);
    row.non_disturbing = is_non_disturbing(mp, b, rho, tol);
    row.epsilon_bar = locally_uniform_error(mp, a, rho, tol);
    row.eta_bar = locally_uniform_disturbance(mp, b, rho, tol);
    if (oracle_samples > 0) {
        row.oracle = sampled_sup_error(mp, a, rho, oracle_samples, derive_seed(seed, 1), tol);
    }
    return row;
}

ScenarioReport theorem1_fuzz(const Config &cfg, const Run &run) {
    const std::size_t instances = count(cfg, "instances", 1000);
    const std::size_t oracle_instances = count(cfg, "oracle_instances", 20);
    const std::size_t oracle_samples = count(cfg, "oracle_samples", 10000);
    ScenarioReport r;
    r.inputs = Json{{"instances", instances},
                    {"oracle_instances", oracle_instances},
                    {"oracle_samples", oracle_samples}};
    r.table.parameter = "instance";
    r.table.columns = {"instance",          "family",
                       "system_dim",        "probe_dim",
                       "precise",           "weak_diagonal",
                       "zero_error_on_subspace", "zero_error_on_generators",
                       "agree",             "epsilon_bar",
                       "non_disturbing",    "eta_bar",
                       "oracle_sup",        "oracle_gap"};

    const Tolerances &tol = run.tol;
    auto rows = parallel_map<Theorem1Row>(instances, run.jobs, [&](std::size_t i) {
        RandomInstance inst = random_instance(run.seed, i);
        return theorem1_row(inst.process, inst.a, inst.b, inst.rho, derive_seed(run.seed, 1000000 + i),
                            i < oracle_instances ? oracle_samples : 0, tol);
    });

    std::size_t agree = 0, precise_count = 0;
    bool eps_iff = true, eta_iff = true;
    double oracle_gap = 0.0;
    bool oracle_bounded = true;
    auto account = [&](const Theorem1Row &row) {
        eps_iff = eps_iff && ((row.epsilon_bar <= tol.zero_error_tol) == row.precise.holds);
        eta_iff = eta_iff && ((row.eta_bar <= tol.zero_error_tol) == row.non_disturbing.holds);
        if (row.oracle) {
            oracle_gap = std::max(oracle_gap, std::abs(row.oracle->refined - row.epsilon_bar));
            oracle_bounded = oracle_bounded && row.oracle->best_sample <= row.epsilon_bar + 1e-9;
        }
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Theorem1Row &row = rows[i];
        RandomInstance inst = random_instance(run.seed, i);
        const auto &c = row.conditions;
        agree += c.agree() ? 1 : 0;
        precise_count += c.precise ? 1 : 0;
        account(row);
        r.table.add_row({integer(i), Cell(std::string(family_name(inst.family))),
                         integer(static_cast<std::size_t>(inst.process.system_dim())),
                         integer(static_cast<std::size_t>(inst.process.probe_dim())), Cell(c.precise),
                         Cell(c.weak_diagonal), Cell(c.zero_error_on_subspace),
                         Cell(c.zero_error_on_generators), Cell(c.agree()), num(row.epsilon_bar),
                         Cell(row.non_disturbing.holds), num(row.eta_bar),
                         num(row.oracle ? row.oracle->refined : kNaN),
                         num(row.oracle ? row.oracle->refined - row.epsilon_bar : kNaN)});
    }
    r.results["random"] = Json{{"instances", instances}, {"all_agree", agree}, {"precise", precise_count}};
    r.check("theorem1-random-agree", 9, agree == instances,
            Json{{"all_agree", agree}, {"instances", instances}});

    // Designed edge cases: name, process, A, B, rho, expected precision and
    // non-disturbance.
    struct Designed {
        std::string name;
        MeasuringProcess mp;
        HermitianOperator a;
        HermitianOperator b;
        DensityState rho;
        bool precise;
        bool non_disturbing;
    };
    Rng rng(derive_seed(run.seed, 999999));
    const auto z = qubit::pauli_z(), x = qubit::pauli_x();
    const std::vector<Designed> designed = {
        {"cnot-z-random-state", qubit::cnot_process(), z, x, random_density(2, rng, 2), true, false},
        {"cnot-z-plus-i", qubit::cnot_process(), z, z, DensityState::pure(qubit::ket_plus_i()), true, true},
        {"constant-meter-full-rank", qubit::constant_meter_process(0.0), z, x, DensityState::maximally_mixed(2),
         false, true},
        {"constant-meter-zero", qubit::constant_meter_process(0.0), z, z, DensityState::pure(qubit::ket0()),
         false, true},
        {"reading-one-on-eigenstate", qubit::constant_meter_process(1.0), z, x,
         DensityState::pure(qubit::ket0()), true, true},
        {"reading-one-off-eigenstate", qubit::constant_meter_process(1.0), z, x,
         DensityState::pure(qubit::ket1()), false, true},
        {"rotated-cnot", qubit::rotated_cnot_process(std::numbers::pi / 3.0), z, x,
         DensityState::pure(qubit::ket0()), false, false},
    };
    bool designed_ok = true;
    for (std::size_t k = 0; k < designed.size(); ++k) {
        const Designed &d = designed[k];
        Theorem1Row row = theorem1_row(d.mp, d.a, d.b, d.rho, derive_seed(run.seed, 2000000 + k),
                                       oracle_instances > 0 ? oracle_samples : 0, tol);
        const auto &c = row.conditions;
        const bool ok = c.agree() && c.precise == d.precise && row.non_disturbing.holds == d.non_disturbing;
        designed_ok = designed_ok && ok;
        account(row);
        r.results["designed"].push_back(Json{{"name", d.name},
                                             {"precise", c.precise},
                                             {"weak_diagonal", c.weak_diagonal},
                                             {"zero_error_on_subspace", c.zero_error_on_subspace},
                                             {"zero_error_on_generators", c.zero_error_on_generators},
                                             {"expected_precise", d.precise},
                                             {"non_disturbing", row.non_disturbing.holds},
                                             {"expected_non_disturbing", d.non_disturbing},
                                             {"epsilon_bar", row.epsilon_bar},
                                             {"eta_bar", row.eta_bar},
                                             {"oracle_sup", row.oracle ? row.oracle->refined : kNaN}});
    }
    r.check("theorem1-designed-cases", 9, designed_ok);
    r.check("epsilon-bar-zero-iff-precise", 11, eps_iff);
    r.check("eta-bar-zero-iff-non-disturbing", 11, eta_iff);
    r.check("epsilon-bar-matches-sup-oracle", 11, oracle_gap <= 1e-6 && oracle_bounded,
            Json{{"max_gap", oracle_gap}, {"samples_below_epsilon_bar", oracle_bounded}});
    return r;
}

ScenarioReport universal_edr_fuzz(const Config &cfg, const Run &run) {
    const std::size_t instances = count(cfg, "instances", 1000);
    const std::size_t identity_instances = count(cfg, "identity_instances", 100);
    ScenarioReport r;
    r.inputs = Json{{"instances", instances}, {"identity_instances", identity_instances}};
    r.table.parameter = "instance";
    r.table.columns = concat(concat({"instance", "family", "system_dim", "probe_dim"}, kEdrColumns),
                             kLocalColumns);

    struct Row {
        EdrReport report;
        InstanceFamily family;
        Index ds;
        Index dp;
    };
    auto rows = parallel_map<Row>(instances, run.jobs, [&](std::size_t i) {
        RandomInstance inst = random_instance(run.seed, i);
        return Row{locally_uniform_edr(inst.process, inst.a, inst.b, inst.rho, run.tol), inst.family,
                   inst.process.system_dim(), inst.process.probe_dim()};
    });
    std::size_t universal = 0, ozawa = 0, local = 0, heisenberg_violations = 0;
    std::size_t error_free = 0, error_free_ok = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const EdrReport &rep = rows[i].report;
        universal += rep.universal.satisfied ? 1 : 0;
        ozawa += rep.ozawa.satisfied ? 1 : 0;
        local += (rep.locally_uniform && rep.locally_uniform->satisfied) ? 1 : 0;
        heisenberg_violations += rep.heisenberg.satisfied ? 0 : 1;
        if (rep.error_free) {
            ++error_free;
            error_free_ok += rep.error_free->satisfied ? 1 : 0;
        }
        worst = std::min({worst, rep.universal.lhs - rep.universal.bound, rep.ozawa.lhs - rep.ozawa.bound});
        std::vector<Cell> cells{integer(i), Cell(std::string(family_name(rows[i].family))),
                                integer(static_cast<std::size_t>(rows[i].ds)),
                                integer(static_cast<std::size_t>(rows[i].dp))};
        append(cells, edr_cells(rep));
        append(cells, local_cells(rep));
        r.table.add_row(std::move(cells));
    }
    r.results["random"] = Json{{"instances", instances},
                               {"universal_satisfied", universal},
                               {"ozawa_satisfied", ozawa},
                               {"locally_uniform_satisfied", local},
                               {"heisenberg_violations", heisenberg_violations},
                               {"error_free_cases", error_free},
                               {"min_margin", instances ? worst : kNaN}};
    r.check("universal-edr-holds", 7, universal == instances,
            Json{{"satisfied", universal}, {"instances", instances}});
    r.check("ozawa-edr-holds", 7, ozawa == instances, Json{{"satisfied", ozawa}, {"instances", instances}});
    r.check("locally-uniform-edr-holds", 7, local == instances,
            Json{{"satisfied", local}, {"instances", instances}});
    r.check("error-free-bound-holds", 7, error_free_ok == error_free,
            Json{{"satisfied", error_free_ok}, {"cases", error_free}});

    auto no_interaction = parallel_map<EdrReport>(identity_instances, run.jobs, [&](std::size_t j) {
        Rng rng(derive_seed(run.seed, 3000000 + j));
        std::uniform_int_distribution<Index> sys(2, 4), probe(2, 3);
        const Index ds = sys(rng), dp = probe(rng);
        MeasuringProcess mp(ds, random_unit_vector(dp, rng), UnitaryOperator::identity(ds * dp),
                            random_hermitian(dp, rng));
        HermitianOperator a = random_hermitian(ds, rng);
        HermitianOperator b = random_hermitian(ds, rng);
        return evaluate_edr(mp, a, b, random_density(ds, rng), run.tol);
    });
    std::size_t nd_ok = 0;
    for (const EdrReport &rep : no_interaction) {
        nd_ok += (rep.non_disturbing && rep.non_disturbing->satisfied && rep.ozawa.satisfied &&
                  rep.universal.satisfied)
                     ? 1
                     : 0;
    }
    r.results["no_interaction"] = Json{{"instances", identity_instances}, {"satisfied", nd_ok}};
    r.check("no-interaction-bound-holds", 7, nd_ok == identity_instances,
            Json{{"satisfied", nd_ok}, {"instances", identity_instances}});
    return r;
}

ScenarioReport three_state_demo(const Config &cfg, const Run &run) {
    const std::size_t instances = count(cfg, "instances", 1000);
    const std::size_t shots = count(cfg, "shots", 100000);
    const std::size_t runs = count(cfg, "sampling_seeds", 20);
    ScenarioReport r;
    r.inputs = Json{{"instances", instances}, {"shots", shots}, {"sampling_seeds", runs}};
    r.table.parameter = "run";
    r.table.columns = {"run",
                       "error_sq_exact",
                       "error_sq_estimate",
                       "error_standard_error",
                       "error_z",
                       "disturbance_sq_exact",
                       "disturbance_sq_estimate",
                       "disturbance_standard_error",
                       "disturbance_z"};
    const Tolerances &tol = run.tol;

    struct Diff {
        double error;
        double disturbance;
        bool shifted;
    };
    auto diffs = parallel_map<Diff>(instances, run.jobs, [&](std::size_t i) {
        Rng rng(derive_seed(run.seed, i));
        std::uniform_int_distribution<Index> dim(2, 3);
        const Index ds = dim(rng), dp = dim(rng);
        RandomInstance inst = random_instance(InstanceFamily::Generic, ds, dp, rng);
        auto e = three_state_error(meter_moments(inst.process, tol), inst.a, inst.rho, tol);
        auto d = three_state_disturbance(inst.process, inst.b, inst.rho, tol);
        return Diff{std::abs(e.value - rms_error(inst.process, inst.a, inst.rho, tol)),
                    std::abs(d.value - rms_disturbance(inst.process, inst.b, inst.rho, tol)),
                    e.shifted || d.shifted};
    });
    double max_e = 0.0, max_d = 0.0;
    std::size_t shifted = 0;
    for (const Diff &d : diffs) {
        max_e = std::max(max_e, d.error);
        max_d = std::max(max_d, d.disturbance);
        shifted += d.shifted ? 1 : 0;
    }
    r.results["exact"] = Json{{"instances", instances},
                              {"max_error_difference", max_e},
                              {"max_disturbance_difference", max_d},
                              {"shifted", shifted}};
    r.check("three-state-exact-error", 10, max_e <= 1e-9, Json{{"max_difference", max_e}});
    r.check("three-state-exact-disturbance", 10, max_d <= 1e-9, Json{{"max_difference", max_d}});

    // Designed: CNOT reads sigma_z exactly; the zero meter misses it by 1.
    const auto z = qubit::pauli_z(), x = qubit::pauli_x();
    const auto cnot = qubit::cnot_process();
    const auto zero_meter = qubit::constant_meter_process(0.0);
    const auto plus_i = DensityState::pure(qubit::ket_plus_i());
    const auto cnot_e = three_state_error(meter_moments(cnot, tol), z, plus_i, tol);
    const auto cnot_d = three_state_disturbance(cnot, x, plus_i, tol);
    const auto zero_e = three_state_error(meter_moments(zero_meter, tol), z, DensityState::pure(qubit::ket0()), tol);
    const auto one_e = three_state_error(meter_moments(zero_meter, tol), z, DensityState::pure(qubit::ket1()), tol);
    r.results["designed"] = Json{{"cnot_error_squared", cnot_e.squared},
                                 {"cnot_disturbance", cnot_d.value},
                                 {"zero_meter_error_on_zero", zero_e.value},
                                 {"zero_meter_error_on_one", one_e.value},
                                 {"zero_meter_on_one_shift", one_e.shift}};
    r.check("three-state-designed", 10,
            std::abs(cnot_e.squared) <= 1e-9 && std::abs(cnot_d.value - std::sqrt(2.0)) <= 1e-9 &&
                std::abs(zero_e.value - 1.0) <= 1e-9 && std::abs(one_e.value - 1.0) <= 1e-9 && one_e.shifted,
            r.results["designed"]);

    Rng rng(derive_seed(run.seed, 5000000));
    RandomInstance inst = random_instance(InstanceFamily::Generic, 2, 2, rng);
    const double e_exact = std::pow(rms_error(inst.process, inst.a, inst.rho, tol), 2);
    const double d_exact = std::pow(rms_disturbance(inst.process, inst.b, inst.rho, tol), 2);
    struct Sampled {
        SampledEstimate error;
        SampledEstimate disturbance;
    };
    auto sampled = parallel_map<Sampled>(runs, run.jobs, [&](std::size_t j) {
        return Sampled{three_state_error_sampled(inst.process, inst.a, inst.rho, shots,
                                                 derive_seed(run.seed, 6000000 + j), tol),
                       three_state_disturbance_sampled(inst.process, inst.b, inst.rho, shots,
                                                       derive_seed(run.seed, 7000000 + j), tol)};
    });
    double max_z = 0.0;
    for (std::size_t j = 0; j < sampled.size(); ++j) {
        const auto &s = sampled[j];
        const double ze = (s.error.squared - e_exact) / s.error.standard_error;
        const double zd = (s.disturbance.squared - d_exact) / s.disturbance.standard_error;
        max_z = std::max({max_z, std::abs(ze), std::abs(zd)});
        r.table.add_row({integer(j), num(e_exact), num(s.error.squared), num(s.error.standard_error), num(ze),
                         num(d_exact), num(s.disturbance.squared), num(s.disturbance.standard_error),
                         num(zd)});
    }
    r.check("three-state-sampling-within-5-se", 10, max_z <= 5.0,
            Json{{"max_abs_z", max_z}, {"runs", runs}, {"shots", shots}});
    return r;
}

ScenarioReport weak_method_demo(const Config &cfg, const Run &run) {
    const std::size_t instances = count(cfg, "instances", 1000);
    const double theta = cfg.get_double("theta", std::numbers::pi / 3.0);
    ScenarioReport r;
    r.inputs = Json{{"instances", instances}, {"theta", theta}};
    r.table.parameter = "pair";
    r.table.columns = {"pair", "x", "y", "re", "im"};
    const Tolerances &tol = run.tol;

    struct Diff {
        double error;
        double disturbance;
    };
    auto diffs = parallel_map<Diff>(instances, run.jobs, [&](std::size_t i) {
        Rng rng(derive_seed(run.seed, i));
        std::uniform_int_distribution<Index> sys(2, 4), probe(2, 3);
        const Index ds = sys(rng), dp = probe(rng);
        RandomInstance inst = random_instance(InstanceFamily::Generic, ds, dp, rng);
        const double e = weak_method_error(weak_joint_distribution(inst.process, inst.a, inst.rho, tol), tol);
        const double d = weak_method_disturbance(inst.process, inst.b, inst.rho, tol);
        return Diff{std::abs(e - rms_error(inst.process, inst.a, inst.rho, tol)),
                    std::abs(d - rms_disturbance(inst.process, inst.b, inst.rho, tol))};
    });
    double max_e = 0.0, max_d = 0.0;
    for (const Diff &d : diffs) {
        max_e = std::max(max_e, d.error);
        max_d = std::max(max_d, d.disturbance);
    }
    r.results["exact"] = Json{{"instances", instances},
                              {"max_error_difference", max_e},
                              {"max_disturbance_difference", max_d}};
    r.check("weak-method-exact-error", 10, max_e <= 1e-9, Json{{"max_difference", max_e}});
    r.check("weak-method-exact-disturbance", 10, max_d <= 1e-9, Json{{"max_difference", max_d}});

    // Commuting cases: the weak distribution is the joint distribution, and
    // the weak-method functional is the Gauss rms form over it.
    const auto z = qubit::pauli_z();
    double commuting_gap = 0.0, gauss_gap = 0.0;
    Rng rng(derive_seed(run.seed, 8000000));
    const std::vector<std::pair<MeasuringProcess, DensityState>> commuting = {
        {qubit::cnot_process(), DensityState::pure(qubit::ket_plus())},
        {qubit::independent_meter_process(qubit::ket_plus()), random_density(2, rng, 2)},
    };
    for (const auto &[mp, rho] : commuting) {
        const auto w = weak_joint_distribution(mp, z, rho, tol);
        const auto j = joint_distribution(mp, HermitianOperator(tensor(z.matrix(), identity(2))),
                                          HermitianOperator(heisenberg_evolve(mp, mp.meter(), Factor::Probe, Time::End)),
                                          rho, tol);
        double gauss = 0.0;
        for (std::size_t k = 0; k < j.support.size(); ++k) {
            const double dxy = j.support[k].first - j.support[k].second;
            gauss += dxy * dxy * j.probs[k];
            for (std::size_t m = 0; m < w.support.size(); ++m) {
                if (w.support[m] == j.support[k]) {
                    commuting_gap = std::max(commuting_gap, std::abs(w.values[m] - j.probs[k]));
                }
            }
        }
        const double eps = rms_error(mp, z, rho, tol);
        gauss_gap = std::max({gauss_gap, std::abs(gauss - eps * eps),
                              std::abs(std::pow(weak_method_error(w, tol), 2) - gauss)});
    }
    r.check("weak-commuting-equals-joint", 10, commuting_gap <= 1e-12, Json{{"max_difference", commuting_gap}});
    r.check("weak-commuting-gauss-form", 10, gauss_gap <= 1e-9, Json{{"max_difference", gauss_gap}});

    const auto mp = qubit::rotated_cnot_process(theta);
    const auto rho = DensityState::pure(qubit::ket_plus_i());
    const auto w = weak_joint_distribution(mp, z, rho, tol);
    double max_im = 0.0;
    Complex total = 0.0;
    for (std::size_t k = 0; k < w.values.size(); ++k) {
        max_im = std::max(max_im, std::abs(w.values[k].imag()));
        total += w.values[k];
        r.table.add_row({integer(k), num(w.support[k].first), num(w.support[k].second), num(w.values[k].real()),
                         num(w.values[k].imag())});
    }
    const double eps = rms_error(mp, z, rho, tol);
    const double weak_eps = weak_method_error(w, tol);
    r.results["noncommuting"] = Json{{"theta", theta},
                                     {"max_abs_imaginary", max_im},
                                     {"total_re", total.real()},
                                     {"total_im", total.imag()},
                                     {"epsilon", eps},
                                     {"weak_method_epsilon", weak_eps}};
    r.check("weak-noncommuting-complex", 10,
            max_im > 1e-3 && std::abs(total - Complex(1.0)) <= 1e-12 && std::abs(eps - weak_eps) <= 1e-9,
            r.results["noncommuting"]);
    return r;
}

struct Entry {
    ScenarioInfo info;
    ScenarioFn run;
};

const std::vector<Entry> &registry() {
    static const std::vector<Entry> entries = {
        {{"von-neumann-edr",
          "von Neumann position measurement: product eps(Q) eta(P) over probe widths, a random "
          "ensemble, and the grid-quadrature cross-check of the meter distribution",
          {"hbar", "widths", "excess", "instances", "grid_points", "psi_mean", "psi_var", "xi_mean",
           "xi_var"}},
         von_neumann_edr},
        {{"ozawa-violation",
          "Ozawa's 1988 model: eps(Q) = 0 so eps(Q) eta(P) = 0 < hbar/2, and the near-eigenstate "
          "limit eta(P) -> 0",
          {"hbar", "instances", "limit_steps"}},
         ozawa_violation},
        {{"kennard", "sigma(Q) sigma(P) >= hbar/2 for listed variance pairs and random Gaussian states",
          {"hbar", "var_q", "var_p", "instances"}},
         kennard},
        {{"arthurs-kelly", "Joint position and momentum readout: meter and error products",
          {"hbar", "instances"}},
         arthurs_kelly},
        {{"cnot-qubit", "CNOT measurement of sigma_z and disturbance of sigma_x in qubit states", {}},
         cnot_qubit},
        {{"theorem1-fuzz",
          "Four characterizations of precise measurement on random and designed processes, and the "
          "locally uniform quantities",
          {"instances", "oracle_instances", "oracle_samples"}},
         theorem1_fuzz},
        {{"universal-edr-fuzz", "Universal, three-term and locally uniform relations on random processes",
          {"instances", "identity_instances"}},
         universal_edr_fuzz},
        {{"three-state-demo", "Three-state estimates of eps and eta, exact and sampled",
          {"instances", "shots", "sampling_seeds"}},
         three_state_demo},
        {{"weak-method-demo", "Weak joint distributions and the weak-measurement estimates", {"instances", "theta"}},
         weak_method_demo},
        {{"ozawa-tau-sweep", "Transfer matrices over the interaction time, closed form against exponentials",
          {"points"}},
         ozawa_tau_sweep},
    };
    return entries;
}

}  // namespace

const std::vector<ScenarioInfo> &scenario_catalog() {
    static const std::vector<ScenarioInfo> catalog = [] {
        std::vector<ScenarioInfo> out;
        for (const auto &e : registry()) {
            out.push_back(e.info);
        }
        return out;
    }();
    return catalog;
}

ScenarioReport run_scenario(const std::string &name, const Config &config) {
    const Entry *entry = nullptr;
    for (const auto &e : registry()) {
        if (e.info.name == name) {
            entry = &e;
        }
    }
    if (!entry) {
        std::string known;
        for (const auto &e : registry()) {
            known += (known.empty() ? "" : ", ") + e.info.name;
        }
        throw Error(ErrorKind::UnknownScenario, "unknown scenario '" + name + "' (known: " + known + ")");
    }
    std::set<std::string> accepted(entry->info.keys.begin(), entry->info.keys.end());
    accepted.insert({"seed", "jobs"});
    for (const auto &[key, value] : config.entries()) {
        if (!accepted.count(key)) {
            std::string list;
            for (const auto &k : accepted) {
                list += (list.empty() ? "" : ", ") + k;
            }
            throw Error(ErrorKind::Config,
                        "scenario '" + name + "' does not accept config key '" + key + "' (accepted: " + list + ")");
        }
    }
    Run run;
    run.seed = config.get_uint("seed", 7);
    const std::uint64_t jobs = config.get_uint("jobs", 1);
    run.jobs = jobs == 0 ? std::max(1u, std::thread::hardware_concurrency())
                         : static_cast<unsigned>(std::min<std::uint64_t>(jobs, 256));
    ScenarioReport report = entry->run(config, run);
    report.scenario = name;
    report.seed = run.seed;
    return report;
}

}  // namespace edrlab
