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

#include "edrlab/edrlab.h"

#include <memory>
#include <new>
#include <string>

#include "edrlab/edr.hpp"
#include "edrlab/error.hpp"
#include "edrlab/gaussian_cv.hpp"
#include "edrlab/scenarios.hpp"

struct edrlab_config {
    edrlab::Config config;
};

struct edrlab_result {
    edrlab::ScenarioReport report;
    edrlab::ReportPaths paths;
};

struct edrlab_gaussian {
    edrlab::cv::GaussianState4 state;
};

struct edrlab_process {
    edrlab::MeasuringProcess process;
};

namespace {

thread_local std::string last_error;

edrlab_status status_of(edrlab::ErrorKind kind) {
    using edrlab::ErrorKind;
    switch (kind) {
        case ErrorKind::InvalidArgument:
            return EDRLAB_ERR_INVALID_ARGUMENT;
        case ErrorKind::DimensionMismatch:
            return EDRLAB_ERR_DIMENSION;
        case ErrorKind::Validation:
            return EDRLAB_ERR_VALIDATION;
        case ErrorKind::Precondition:
            return EDRLAB_ERR_PRECONDITION;
        case ErrorKind::Config:
            return EDRLAB_ERR_CONFIG;
        case ErrorKind::UnknownScenario:
            return EDRLAB_ERR_UNKNOWN_SCENARIO;
        case ErrorKind::Io:
            return EDRLAB_ERR_IO;
        case ErrorKind::Numeric:
            return EDRLAB_ERR_NUMERIC;
    }
    return EDRLAB_ERR_INTERNAL;
}

template <class F>
edrlab_status guarded(F &&f) {
    try {
        f();
        return EDRLAB_OK;
    } catch (const edrlab::Error &e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return EDRLAB_ERR_INTERNAL;
    } catch (const std::exception &e) {
        last_error = e.what();
        return EDRLAB_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return EDRLAB_ERR_INTERNAL;
    }
}

void require(const void *p, const char *what) {
    if (!p) {
        throw edrlab::Error(edrlab::ErrorKind::InvalidArgument, std::string(what) + " is NULL");
    }
}

edrlab::Matrix read_matrix(const double *data, std::size_t n, const char *what) {
    require(data, what);
    edrlab::Matrix m(static_cast<edrlab::Index>(n), static_cast<edrlab::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double *p = data + 2 * (i * n + j);
            m(static_cast<edrlab::Index>(i), static_cast<edrlab::Index>(j)) = edrlab::Complex(p[0], p[1]);
        }
    }
    return m;
}

edrlab::Vector read_vector(const double *data, std::size_t n, const char *what) {
    require(data, what);
    edrlab::Vector v(static_cast<edrlab::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        v(static_cast<edrlab::Index>(i)) = edrlab::Complex(data[2 * i], data[2 * i + 1]);
    }
    return v;
}

edrlab_relation relation(const edrlab::RelationCheck &c) { return {c.lhs, c.bound, c.satisfied ? 1 : 0}; }

void fill(const edrlab::EdrReport &r, edrlab_edr_report *out) {
    *out = edrlab_edr_report{};
    out->epsilon_A = r.epsilon_A;
    out->eta_B = r.eta_B;
    out->sigma_A = r.sigma_A;
    out->sigma_B = r.sigma_B;
    out->correlation_term = r.correlation_term;
    out->commutator_bound = r.commutator_bound;
    out->heisenberg = relation(r.heisenberg);
    out->universal = relation(r.universal);
    out->ozawa = relation(r.ozawa);
    if (r.locally_uniform) {
        out->has_locally_uniform = 1;
        out->epsilon_bar = r.epsilon_bar.value_or(0.0);
        out->eta_bar = r.eta_bar.value_or(0.0);
        out->locally_uniform = relation(*r.locally_uniform);
    }
    if (r.error_free) {
        out->has_error_free = 1;
        out->error_free = relation(*r.error_free);
    }
    if (r.non_disturbing) {
        out->has_non_disturbing = 1;
        out->non_disturbing = relation(*r.non_disturbing);
    }
}

edrlab::cv::ModeMoments mode_of(const edrlab_mode &m) {
    edrlab::cv::ModeMoments out;
    out.mean_q = m.mean_q;
    out.mean_p = m.mean_p;
    out.var_q = m.var_q;
    out.var_p = m.var_p;
    out.cov_qp = m.cov_qp;
    return out;
}

edrlab::cv::CvModelKind kind_of(edrlab_cv_model model) {
    switch (model) {
        case EDRLAB_CV_VON_NEUMANN:
            return edrlab::cv::CvModelKind::VonNeumann;
        case EDRLAB_CV_OZAWA_1988:
            return edrlab::cv::CvModelKind::Ozawa1988;
    }
    throw edrlab::Error(edrlab::ErrorKind::InvalidArgument, "unknown CV model");
}

}  // namespace

extern "C" {

const char *edrlab_version(void) { return "0.1.0"; }

const char *edrlab_status_name(edrlab_status status) {
    switch (status) {
        case EDRLAB_OK:
            return "ok";
        case EDRLAB_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case EDRLAB_ERR_DIMENSION:
            return "dimension mismatch";
        case EDRLAB_ERR_VALIDATION:
            return "validation error";
        case EDRLAB_ERR_PRECONDITION:
            return "precondition violated";
        case EDRLAB_ERR_CONFIG:
            return "config error";
        case EDRLAB_ERR_UNKNOWN_SCENARIO:
            return "unknown scenario";
        case EDRLAB_ERR_IO:
            return "i/o error";
        case EDRLAB_ERR_NUMERIC:
            return "numeric error";
        case EDRLAB_ERR_INTERNAL:
            return "internal error";
    }
    return "unknown status";
}

const char *edrlab_last_error(void) { return last_error.c_str(); }

edrlab_status edrlab_config_new(edrlab_config **out) {
    return guarded([&] {
        require(out, "out");
        *out = new edrlab_config();
    });
}

edrlab_status edrlab_config_load(edrlab_config *config, const char *path) {
    return guarded([&] {
        require(config, "config");
        require(path, "path");
        config->config.merge(edrlab::Config::from_file(path));
    });
}

edrlab_status edrlab_config_set(edrlab_config *config, const char *key, const char *value) {
    return guarded([&] {
        require(config, "config");
        require(key, "key");
        require(value, "value");
        config->config.set(key, value);
    });
}

void edrlab_config_free(edrlab_config *config) { delete config; }

size_t edrlab_scenario_count(void) { return edrlab::scenario_catalog().size(); }

const char *edrlab_scenario_name(size_t index) {
    const auto &c = edrlab::scenario_catalog();
    return index < c.size() ? c[index].name.c_str() : nullptr;
}

const char *edrlab_scenario_summary(size_t index) {
    const auto &c = edrlab::scenario_catalog();
    return index < c.size() ? c[index].summary.c_str() : nullptr;
}

edrlab_status edrlab_run(const char *scenario, const edrlab_config *config, const char *out_dir,
                         edrlab_result **out) {
    return guarded([&] {
        require(scenario, "scenario");
        require(out, "out");
        *out = nullptr;
        const edrlab::Config empty;
        auto result = std::make_unique<edrlab_result>();
        result->report = edrlab::run_scenario(scenario, config ? config->config : empty);
        result->paths = edrlab::write_report(result->report, out_dir ? out_dir : ".",
                                             edrlab::default_tolerances());
        *out = result.release();
    });
}

int edrlab_result_passed(const edrlab_result *result) { return result && result->report.passed() ? 1 : 0; }

size_t edrlab_result_check_count(const edrlab_result *result) {
    return result ? result->report.checks.size() : 0;
}

edrlab_status edrlab_result_check(const edrlab_result *result, size_t index, const char **name,
                                  int *criterion, int *passed) {
    return guarded([&] {
        require(result, "result");
        if (index >= result->report.checks.size()) {
            throw edrlab::Error(edrlab::ErrorKind::InvalidArgument, "check index out of range");
        }
        const auto &c = result->report.checks[index];
        if (name) {
            *name = c.name.c_str();
        }
        if (criterion) {
            *criterion = c.criterion;
        }
        if (passed) {
            *passed = c.passed ? 1 : 0;
        }
    });
}

const char *edrlab_result_json_path(const edrlab_result *result) {
    return result ? result->paths.json.c_str() : nullptr;
}

const char *edrlab_result_csv_path(const edrlab_result *result) {
    return result ? result->paths.csv.c_str() : nullptr;
}

void edrlab_result_free(edrlab_result *result) { delete result; }

edrlab_status edrlab_emit_plot_data(const char *report_path, const char *csv_path) {
    return guarded([&] {
        require(report_path, "report_path");
        require(csv_path, "csv_path");
        edrlab::emit_plot_data(report_path, csv_path);
    });
}

edrlab_status edrlab_gaussian_new(const edrlab_mode *object, const edrlab_mode *probe, double hbar,
                                  edrlab_gaussian **out) {
    return guarded([&] {
        require(object, "object");
        require(probe, "probe");
        require(out, "out");
        *out = new edrlab_gaussian{edrlab::cv::GaussianState4::product(mode_of(*object), mode_of(*probe), hbar)};
    });
}

void edrlab_gaussian_free(edrlab_gaussian *state) { delete state; }

edrlab_status edrlab_cv_transfer(edrlab_cv_model model, double tau_fraction, double out[16]) {
    return guarded([&] {
        require(out, "out");
        const auto s = edrlab::cv::transfer(kind_of(model), tau_fraction);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                out[4 * i + j] = s.matrix(i, j);
            }
        }
    });
}

edrlab_status edrlab_cv_edr(edrlab_cv_model model, const edrlab_gaussian *state, edrlab_edr_report *out) {
    return guarded([&] {
        require(state, "state");
        require(out, "out");
        fill(edrlab::cv::edr_product_report(kind_of(model), state->state), out);
    });
}

edrlab_status edrlab_process_new(size_t system_dim, size_t probe_dim, const double *probe_state,
                                 const double *coupling, const double *meter, edrlab_process **out) {
    return guarded([&] {
        require(out, "out");
        if (system_dim == 0 || probe_dim == 0) {
            throw edrlab::Error(edrlab::ErrorKind::DimensionMismatch, "dimensions must be positive");
        }
        edrlab::MeasuringProcess mp(static_cast<edrlab::Index>(system_dim),
                                    read_vector(probe_state, probe_dim, "probe_state"),
                                    edrlab::UnitaryOperator(read_matrix(coupling, system_dim * probe_dim, "coupling")),
                                    edrlab::HermitianOperator(read_matrix(meter, probe_dim, "meter")));
        *out = new edrlab_process{std::move(mp)};
    });
}

void edrlab_process_free(edrlab_process *process) { delete process; }

edrlab_status edrlab_rms_error(const edrlab_process *process, const double *a, const double *rho, double *out) {
    return guarded([&] {
        require(process, "process");
        require(out, "out");
        const auto n = static_cast<std::size_t>(process->process.system_dim());
        *out = edrlab::rms_error(process->process, edrlab::HermitianOperator(read_matrix(a, n, "a")),
                                 edrlab::DensityState(read_matrix(rho, n, "rho")));
    });
}

edrlab_status edrlab_rms_disturbance(const edrlab_process *process, const double *b, const double *rho,
                                     double *out) {
    return guarded([&] {
        require(process, "process");
        require(out, "out");
        const auto n = static_cast<std::size_t>(process->process.system_dim());
        *out = edrlab::rms_disturbance(process->process, edrlab::HermitianOperator(read_matrix(b, n, "b")),
                                       edrlab::DensityState(read_matrix(rho, n, "rho")));
    });
}

edrlab_status edrlab_evaluate_edr(const edrlab_process *process, const double *a, const double *b,
                                  const double *rho, int locally_uniform, edrlab_edr_report *out) {
    return guarded([&] {
        require(process, "process");
        require(out, "out");
        const auto n = static_cast<std::size_t>(process->process.system_dim());
        edrlab::HermitianOperator am(read_matrix(a, n, "a"));
        edrlab::HermitianOperator bm(read_matrix(b, n, "b"));
        edrlab::DensityState state(read_matrix(rho, n, "rho"));
        fill(locally_uniform ? edrlab::locally_uniform_edr(process->process, am, bm, state)
                             : edrlab::evaluate_edr(process->process, am, bm, state),
             out);
    });
}

}  // extern "C"
