// Rectangular evaluation grids over two chosen coordinates of the primal or
// dual function, with dual-domain masks, JSON emission, and an optional
// static SVG contour rendering (10 quantile levels, marching squares).
#pragma once

#include <string>
#include <vector>

#include "cdt/problem.hpp"

namespace cdt {

enum class GridFunction { Primal, Dual };

struct GridSpec {
  GridFunction function = GridFunction::Primal;
  int axis_i = 0;  // varied coordinate indices (primal x / flat dual)
  int axis_j = 1;
  double lo_i = -1.0, hi_i = 1.0;
  double lo_j = -1.0, hi_j = 1.0;
  int res = 100;
  Vec fixed;  // full-dimension base point; varied entries overwritten
};

// Cell domain labels for dual grids; primal grids are all "ok".
enum class CellMask { Ok, SPlus, SMinus, Indefinite, Degenerate, Outside };

struct GridDump {
  GridSpec spec;
  std::vector<double> values;   // row-major res*res; NaN where unevaluable
  std::vector<CellMask> mask;
};

const char* mask_name(CellMask m);

// Throws DomainError when the spec does not pin all but two coordinates.
GridDump compute_grid(const ProblemInstance& inst, const GridSpec& spec);

std::string serialize_grid(const GridDump& dump);

// SVG 1.1 contour rendering of the masked grid values.
std::string render_svg(const GridDump& dump);

}  // namespace cdt
