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

#include "edrlab/edr.hpp"

#include <algorithm>
#include <cmath>

namespace edrlab {

RelationCheck make_check(double lhs, double bound, double slack) {
    return RelationCheck{lhs, bound, lhs >= bound - slack};
}

namespace {

struct Scale {
    double measured = 1.0;   // applied to A and the meter
    double disturbed = 1.0;  // applied to B
};

Scale choose_scale(const MeasuringProcess &mp, const HermitianOperator &a,
                   const HermitianOperator &b, const Tolerances &tol) {
    Scale s;
    double na = std::max(operator_norm(a.matrix()), operator_norm(mp.meter().matrix()));
    double nb = operator_norm(b.matrix());
    if (na > tol.rescale_norm) {
        s.measured = 1.0 / na;
    }
    if (nb > tol.rescale_norm) {
        s.disturbed = 1.0 / nb;
    }
    return s;
}

EdrReport evaluate(const MeasuringProcess &mp_in, const HermitianOperator &a_in,
                   const HermitianOperator &b_in, const DensityState &rho, bool locally_uniform,
                   const Tolerances &tol) {
    const Scale s = choose_scale(mp_in, a_in, b_in, tol);
    const bool rescaled = s.measured != 1.0 || s.disturbed != 1.0;
    const MeasuringProcess mp =
        s.measured == 1.0 ? mp_in
                          : MeasuringProcess(mp_in.system_dim(), mp_in.probe_state(),
                                             mp_in.coupling(),
                                             HermitianOperator(s.measured * mp_in.meter().matrix()));
    const HermitianOperator a = s.measured == 1.0 ? a_in : HermitianOperator(s.measured * a_in.matrix());
    const HermitianOperator b =
        s.disturbed == 1.0 ? b_in : HermitianOperator(s.disturbed * b_in.matrix());

    EdrReport r;
    r.epsilon_A = rms_error(mp, a, rho, tol);
    r.eta_B = rms_disturbance(mp, b, rho, tol);
    r.sigma_A = std_dev(a, rho, tol);
    r.sigma_B = std_dev(b, rho, tol);
    r.commutator_bound = 0.5 * std::abs(expectation(commutator(a.matrix(), b.matrix()), rho));

    ErrorObservables obs = error_observables(mp, a, b);
    Complex corr = expectation(commutator(obs.mean_noise, b.matrix()), rho) +
                   expectation(commutator(a.matrix(), obs.mean_disturbance), rho);
    r.correlation_term = std::abs(corr);

    const double eps = r.epsilon_A, eta = r.eta_B, bound = r.commutator_bound;
    r.heisenberg = make_check(eps * eta, bound, tol.heisenberg_tol);
    r.universal = make_check(eps * eta + r.correlation_term, bound, tol.theorem_tol);
    r.ozawa = make_check(eps * eta + eps * r.sigma_B + r.sigma_A * eta, bound, tol.theorem_tol);
    if (eps <= tol.theorem_tol) {
        r.error_free = make_check(r.sigma_A * eta, bound, tol.theorem_tol);
    }
    if (eta <= tol.theorem_tol) {
        r.non_disturbing = make_check(eps * r.sigma_B, bound, tol.theorem_tol);
    }
    if (locally_uniform) {
        double eb = locally_uniform_error(mp, a, rho, tol);
        double hb = locally_uniform_disturbance(mp, b, rho, tol);
        r.epsilon_bar = eb;
        r.eta_bar = hb;
        r.locally_uniform = make_check(eb * hb + eb * r.sigma_B + r.sigma_A * hb, bound, tol.theorem_tol);
    }

    if (rescaled) {
        const double fa = 1.0 / s.measured, fb = 1.0 / s.disturbed, fab = fa * fb;
        r.epsilon_A *= fa;
        r.sigma_A *= fa;
        r.eta_B *= fb;
        r.sigma_B *= fb;
        r.correlation_term *= fab;
        r.commutator_bound *= fab;
        for (RelationCheck *c : {&r.heisenberg, &r.universal, &r.ozawa}) {
            c->lhs *= fab;
            c->bound *= fab;
        }
        for (std::optional<RelationCheck> *c : {&r.locally_uniform, &r.error_free, &r.non_disturbing}) {
            if (*c) {
                (*c)->lhs *= fab;
                (*c)->bound *= fab;
            }
        }
        if (r.epsilon_bar) {
            *r.epsilon_bar *= fa;
        }
        if (r.eta_bar) {
            *r.eta_bar *= fb;
        }
    }
    return r;
}

}  // namespace

EdrReport evaluate_edr(const MeasuringProcess &mp, const HermitianOperator &a,
                       const HermitianOperator &b, const DensityState &rho, const Tolerances &tol) {
    return evaluate(mp, a, b, rho, false, tol);
}

EdrReport locally_uniform_edr(const MeasuringProcess &mp, const HermitianOperator &a,
                              const HermitianOperator &b, const DensityState &rho,
                              const Tolerances &tol) {
    return evaluate(mp, a, b, rho, true, tol);
}

}  // namespace edrlab
