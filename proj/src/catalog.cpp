#include "cdt/catalog.hpp"

#include <cmath>

namespace cdt {

namespace {

Matrix diag2(double a, double b) {
  Matrix m(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

ProblemInstance make_instance_2d(const Matrix& a, const Matrix& b, double alpha, const Matrix& c,
                                 double beta, double theta, const Vec& f) {
  ProblemInstance inst;
  inst.n = 2;
  inst.a = a;
  inst.exp_terms.push_back({b, alpha});
  inst.quartic_terms.push_back({c, beta, theta});
  inst.f = f;
  return inst;
}

}  // namespace

CatalogEntry example_catalog(const std::string& id) {
  CatalogEntry e;
  e.id = id;
  if (id == "ex1") {
    e.instance = make_instance_2d(diag2(1, -1), diag2(1, 2), 1.0, diag2(1, 1), 1.0, 1.0, {1, 1});
    e.expected.push_back({{{1.171057661103504}, {-0.34599084656216}},
                          {0.54792514555217, 1.003890602479819},
                          Label::GlobalMin,
                          "ex1 reference pair"});
  } else if (id == "ex2") {
    e.instance = make_instance_2d(diag2(1, -16), diag2(1, 1), 1.0, diag2(1, 2), 1.0, 50.0, {-25, 9});
    e.expected.push_back({{{96.61711963278241}, {-38.94928057661689}},
                          {-0.42612784793499, 3.310578038951848},
                          Label::GlobalMin,
                          "ex2 reference pair 1"});
    e.expected.push_back({{{0.42157060067968}, {-49.86072154366873}},
                          {0.51611144112381, -0.078057328303129},
                          Label::LocalMaxPair,
                          "ex2 reference pair 2"});
  } else if (id == "ex3") {
    e.instance = make_instance_2d(diag2(-16, -4), diag2(1, 0), 2.0, diag2(0, 1), 1.0, 2.0, {2, 2});
    e.expected.push_back({{{16.64468576727409}, {4.552474610531074}},
                          {3.102286573591542, 3.620075858467906},
                          Label::GlobalMin,
                          "ex3 reference pair 1"});
    e.expected.push_back({{{0.13641513779858}, {-1.943380912562619}},
                          {-0.12607490787063, -0.33650880356205},
                          Label::LocalMaxPair,
                          "ex3 reference pair 2"});
    e.expected.push_back({{{15.34981976568548}, {3.390906302031545}},
                          {-3.076070133243102, -3.283567054905852},
                          Label::LocalMinPair,
                          "ex3 reference pair 3"});
  } else if (id == "ex4") {
    e.instance = make_instance_2d(diag2(0, 0), diag2(1, 0), 2.0, diag2(0, 1), 1.0, 2.0, {0, 0});
    e.expect_boundary = true;
    e.boundary_point = {{std::exp(-2.0)}, {0.0}};
    e.global_minima = {{0.0, -2.0}, {0.0, 2.0}};
    e.local_max = {0.0, 0.0};
    e.homotopy_limit = {0.0, 2.0};
    e.reference_schedule.mode = PerturbationMode::InstanceHomotopy;
    e.reference_schedule.direction_e_mat = diag2(16, 4);
    e.reference_schedule.direction_e_vec = {2.0, 2.0};
    e.reference_schedule.max_stages = 12;
    double nk = 32.0;
    for (int k = 0; k < 12; ++k) {
      e.reference_schedule.n_sequence.push_back(nk);
      nk *= 2.0;
    }
  } else {
    throw DomainError("unknown catalog id: " + id);
  }
  return e;
}

std::vector<std::string> catalog_ids() { return {"ex1", "ex2", "ex3", "ex4"}; }

}  // namespace cdt
