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

#pragma once

#include <optional>
#include <string>

namespace edrlab {

/// One inequality `lhs >= bound`, with the verdict taken at the slack that
/// applies to that inequality.
struct RelationCheck {
    double lhs = 0.0;
    double bound = 0.0;
    bool satisfied = false;
};

RelationCheck make_check(double lhs, double bound, double slack);

/// All sides of the error-disturbance relations for one scenario.
///
/// `heisenberg`: eps*eta >= |<[A,B]>|/2 (not universally valid).
/// `universal`:  eps*eta + |<[n(A),B]> + <[A,d(B)]>| >= |<[A,B]>|/2.
/// `ozawa`:      eps*eta + eps*sigma(B) + sigma(A)*eta >= |<[A,B]>|/2.
/// `locally_uniform`: the `ozawa` form with eps_bar, eta_bar.
/// `error_free`: sigma(A)*eta >= bound, applicable when eps vanishes.
/// `non_disturbing`: eps*sigma(B) >= bound, applicable when eta vanishes.
struct EdrReport {
    std::string label;
    double epsilon_A = 0.0;
    double eta_B = 0.0;
    double sigma_A = 0.0;
    double sigma_B = 0.0;
    double correlation_term = 0.0;
    double commutator_bound = 0.0;
    RelationCheck heisenberg;
    RelationCheck universal;
    RelationCheck ozawa;
    std::optional<double> epsilon_bar;
    std::optional<double> eta_bar;
    std::optional<RelationCheck> locally_uniform;
    std::optional<RelationCheck> error_free;
    std::optional<RelationCheck> non_disturbing;
};

}  // namespace edrlab
