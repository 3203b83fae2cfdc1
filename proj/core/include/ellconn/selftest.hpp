#pragma once

#include "ellconn/report.hpp"

namespace ellconn {

/// One entry per acceptance criterion; every check is exact (tolerance 0).
Report criterion_family_validity();
Report criterion_par_closed_form();
Report criterion_app_consistency();
Report criterion_degeneration_ladder();
Report criterion_chart_transition();
Report criterion_symplectic_identities();
Report criterion_elementary_transformations();
Report criterion_conservation();
Report criterion_flatness_decisions();
Report criterion_incidence_identity();

/// Runs all criteria; check names are sorted within each criterion already,
/// and the aggregate is deterministic for fixed seeds.
Report run_selftest();

}  // namespace ellconn
