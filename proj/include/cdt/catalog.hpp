// Built-in regression instances ex1..ex4 with their published stationary
// points and classifications, used by the examples command and the
// regression tests.
#pragma once

#include <string>
#include <vector>

#include "cdt/perturb.hpp"
#include "cdt/triality.hpp"

namespace cdt {

struct ExpectedPair {
  DualPoint sigma_bar;
  Vec x_bar;
  Label label = Label::Unclassified;
  std::string provenance;
};

struct CatalogEntry {
  std::string id;
  ProblemInstance instance;
  std::vector<ExpectedPair> expected;

  // ex4 extras
  bool expect_boundary = false;
  DualPoint boundary_point;
  std::vector<Vec> global_minima;      // all co-minimizers when non-unique
  Vec local_max;                       // interior stationary non-minimum, if any
  Vec homotopy_limit;                  // the minimizer the reference tilt selects
  PerturbationSchedule reference_schedule;  // nonempty for ex4
};

// Valid ids: ex1, ex2, ex3, ex4. Throws DomainError otherwise.
CatalogEntry example_catalog(const std::string& id);

std::vector<std::string> catalog_ids();

}  // namespace cdt
