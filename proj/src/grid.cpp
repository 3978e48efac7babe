#include "cdt/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cdt/dual.hpp"
#include "cdt/json_io.hpp"

namespace cdt {

const char* mask_name(CellMask m) {
  switch (m) {
    case CellMask::Ok: return "ok";
    case CellMask::SPlus: return "S+";
    case CellMask::SMinus: return "S-";
    case CellMask::Indefinite: return "indef";
    case CellMask::Degenerate: return "degenerate";
    case CellMask::Outside: return "outside";
  }
  return "outside";
}

GridDump compute_grid(const ProblemInstance& inst, const GridSpec& spec) {
  const int dim = spec.function == GridFunction::Primal ? inst.n : inst.dual_dim();
  if (spec.res < 2) throw DomainError("grid resolution must be at least 2");
  if (spec.axis_i < 0 || spec.axis_j < 0 || spec.axis_i >= dim || spec.axis_j >= dim ||
      spec.axis_i == spec.axis_j)
    throw DomainError("grid axes out of range");
  if (static_cast<int>(spec.fixed.size()) != dim)
    throw DomainError(
        "grid base point must pin every coordinate; pass --fix k=v for the coordinates not on "
        "the axes");

  GridDump dump;
  dump.spec = spec;
  dump.values.assign(static_cast<size_t>(spec.res) * spec.res,
                     std::numeric_limits<double>::quiet_NaN());
  dump.mask.assign(dump.values.size(), CellMask::Outside);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int r = 0; r < spec.res; ++r) {
    const double vj = spec.lo_j + (spec.hi_j - spec.lo_j) * r / (spec.res - 1);
    for (int c = 0; c < spec.res; ++c) {
      const double vi = spec.lo_i + (spec.hi_i - spec.lo_i) * c / (spec.res - 1);
      Vec point = spec.fixed;
      point[spec.axis_i] = vi;
      point[spec.axis_j] = vj;
      const size_t idx = static_cast<size_t>(r) * spec.res + c;
      if (spec.function == GridFunction::Primal) {
        dump.values[idx] = eval_primal(inst, point);
        dump.mask[idx] = CellMask::Ok;
        continue;
      }
      const DualPoint s = unflatten(inst, point);
      if (!in_dual_domain(inst, s)) {
        dump.mask[idx] = CellMask::Outside;
        dump.values[idx] = nan;
        continue;
      }
      const Matrix g = assemble_g(inst, s);
      const Inertia gi = inertia_of(g);
      if (gi.n_zero > 0) dump.mask[idx] = CellMask::Degenerate;
      else if (gi.positive_definite()) dump.mask[idx] = CellMask::SPlus;
      else if (gi.negative_definite()) dump.mask[idx] = CellMask::SMinus;
      else dump.mask[idx] = CellMask::Indefinite;
      try {
        dump.values[idx] = eval_dual(inst, s);
      } catch (const DomainError&) {
        dump.values[idx] = nan;
        dump.mask[idx] = CellMask::Outside;
      }
    }
  }
  return dump;
}

std::string serialize_grid(const GridDump& dump) {
  const GridSpec& s = dump.spec;
  std::string out = "{\"format_version\":1,\"function\":\"";
  out += s.function == GridFunction::Primal ? "primal" : "dual";
  out += "\",\"axes\":{\"i\":" + std::to_string(s.axis_i) + ",\"j\":" + std::to_string(s.axis_j);
  out += ",\"lo_i\":" + json_number(s.lo_i) + ",\"hi_i\":" + json_number(s.hi_i);
  out += ",\"lo_j\":" + json_number(s.lo_j) + ",\"hi_j\":" + json_number(s.hi_j);
  out += ",\"res\":" + std::to_string(s.res) + "},\"fixed\":[";
  for (size_t i = 0; i < s.fixed.size(); ++i) {
    if (i) out += ',';
    out += json_number(s.fixed[i]);
  }
  out += "],\"values\":[";
  for (size_t i = 0; i < dump.values.size(); ++i) {
    if (i) out += ',';
    out += json_number(dump.values[i]);  // NaN -> null
  }
  out += "],\"mask\":[";
  for (size_t i = 0; i < dump.mask.size(); ++i) {
    if (i) out += ',';
    out += '"';
    out += mask_name(dump.mask[i]);
    out += '"';
  }
  out += "]}";
  return out;
}

namespace {

// Linear-interpolated crossing of `level` on the segment [a, b] -> t in [0,1].
double cross_t(double a, double b, double level) { return (level - a) / (b - a); }

}  // namespace

std::string render_svg(const GridDump& dump) {
  const int res = dump.spec.res;
  const double w = 640.0, h = 640.0, pad = 40.0;

  std::vector<double> valid;
  for (double v : dump.values)
    if (std::isfinite(v)) valid.push_back(v);
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
      std::to_string(static_cast<int>(w)) + "\" height=\"" + std::to_string(static_cast<int>(h)) +
      "\" viewBox=\"0 0 640 640\">\n"
      "<rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"white\"/>\n";
  if (valid.size() < 4) return out + "</svg>\n";

  std::sort(valid.begin(), valid.end());
  Vec levels;
  for (int k = 1; k <= 10; ++k) {
    const double q = static_cast<double>(k) / 11.0;
    levels.push_back(valid[static_cast<size_t>(q * (valid.size() - 1))]);
  }

  static const char* palette[10] = {"#313695", "#4575b4", "#74add1", "#abd9e9", "#e0f3f8",
                                    "#fee090", "#fdae61", "#f46d43", "#d73027", "#a50026"};

  auto px = [&](double c) { return pad + (w - 2 * pad) * c / (res - 1); };
  auto py = [&](double r) { return h - pad - (h - 2 * pad) * r / (res - 1); };
  auto val = [&](int r, int c) { return dump.values[static_cast<size_t>(r) * res + c]; };

  for (int li = 0; li < 10; ++li) {
    const double level = levels[li];
    std::string path;
    for (int r = 0; r + 1 < res; ++r) {
      for (int c = 0; c + 1 < res; ++c) {
        const double v00 = val(r, c), v10 = val(r, c + 1), v01 = val(r + 1, c),
                     v11 = val(r + 1, c + 1);
        if (!std::isfinite(v00) || !std::isfinite(v10) || !std::isfinite(v01) ||
            !std::isfinite(v11))
          continue;
        // Edge crossings: bottom, right, top, left.
        struct Pt { double x, y; };
        std::vector<Pt> pts;
        if ((v00 < level) != (v10 < level))
          pts.push_back({px(c + cross_t(v00, v10, level)), py(r)});
        if ((v10 < level) != (v11 < level))
          pts.push_back({px(c + 1), py(r + cross_t(v10, v11, level))});
        if ((v01 < level) != (v11 < level))
          pts.push_back({px(c + cross_t(v01, v11, level)), py(r + 1)});
        if ((v00 < level) != (v01 < level))
          pts.push_back({px(c), py(r + cross_t(v00, v01, level))});
        if (pts.size() >= 2) {
          char seg[128];
          std::snprintf(seg, sizeof(seg), "M%.2f %.2fL%.2f %.2f", pts[0].x, pts[0].y, pts[1].x,
                        pts[1].y);
          path += seg;
          if (pts.size() == 4) {
            std::snprintf(seg, sizeof(seg), "M%.2f %.2fL%.2f %.2f", pts[2].x, pts[2].y, pts[3].x,
                          pts[3].y);
            path += seg;
          }
        }
      }
    }
    if (!path.empty()) {
      out += "<path d=\"" + path + "\" fill=\"none\" stroke=\"";
      out += palette[li];
      out += "\" stroke-width=\"1\"/>\n";
    }
  }
  out += "<rect x=\"40\" y=\"40\" width=\"560\" height=\"560\" fill=\"none\" stroke=\"black\"/>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace cdt
