#include "qgd/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qgd {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, end);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::InvalidArgument, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string snapshot_csv(const MeshState& state, const Mesh& mesh) {
  std::string out = "x,rho,u\n";
  for (Eigen::Index k = 0; k < state.size(); ++k) {
    out += format_number(mesh.node(static_cast<int>(k))) + "," + format_number(state.rho(k)) + "," +
           format_number(state.u(k)) + "\n";
  }
  return out;
}

std::string diagnostics_csv(const Trajectory& traj) {
  std::string out = "t,mass,momentum,min_rho,max_abs_u\n";
  for (const auto& d : traj.diagnostics) {
    out += format_number(d.t) + "," + format_number(d.mass) + "," + format_number(d.momentum) + "," +
           format_number(d.min_rho) + "," + format_number(d.max_abs_u) + "\n";
  }
  return out;
}

std::string verdict_csv(const std::vector<VerdictRow>& rows) {
  std::string out = "alpha,beta,kappa,variant,necessary,criterion,sufficient,oracle_rho,oracle_gram\n";
  for (const auto& [p, v] : rows) {
    const std::string sufficient = v.sufficient_ok ? (*v.sufficient_ok ? "true" : "false") : "";
    out += format_number(p.alpha) + "," + format_number(p.beta) + "," + format_number(p.kappa) + "," +
           to_string(p.variant) + "," + (v.necessary_ok ? "true" : "false") + "," +
           (v.criterion_ok ? "true" : "false") + "," + sufficient + "," +
           format_number(v.oracle_spectral_radius) + "," + format_number(v.oracle_gram_max) + "\n";
  }
  return out;
}

std::string region_csv(const RegionMap& map) {
  std::string out = "alpha,beta,verdict,oscillation_score\n";
  for (std::size_t i = 0; i < map.alphas.size(); ++i) {
    for (std::size_t j = 0; j < map.betas.size(); ++j) {
      const auto& v = map.at(i, j);
      out += format_number(map.alphas[i]) + "," + format_number(map.betas[j]) + "," +
             to_string(v.classification) + "," + format_number(v.oscillation_score) + "\n";
    }
  }
  return out;
}

std::string overlay_csv(const RegionMap& map) {
  std::string out = "alpha,necessary,criterion,sufficient\n";
  for (std::size_t i = 0; i < map.alphas.size(); ++i) {
    out += format_number(map.alphas[i]) + "," + format_number(map.overlays.necessary[i]) + "," +
           format_number(map.overlays.criterion[i]) + "," +
           (map.overlays.sufficient ? format_number((*map.overlays.sufficient)[i]) : "") + "\n";
  }
  return out;
}

namespace {

// Maps data coordinates to a plot rectangle inside an SVG canvas.
struct Frame {
  double left, top, width, height;
  double x0, x1, y0, y1;

  double px(double x) const { return left + (x - x0) / (x1 - x0) * width; }
  double py(double y) const { return top + height - (y - y0) / (y1 - y0) * height; }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string tick(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

void axes(std::ostringstream& os, const Frame& f, const std::string& xlabel,
          const std::string& ylabel) {
  os << "<rect x=\"" << num(f.left) << "\" y=\"" << num(f.top) << "\" width=\"" << num(f.width)
     << "\" height=\"" << num(f.height) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.x0 + (f.x1 - f.x0) * i / 4.0;
    const double yv = f.y0 + (f.y1 - f.y0) * i / 4.0;
    os << "<text x=\"" << num(f.px(xv)) << "\" y=\"" << num(f.top + f.height + 16)
       << "\" font-size=\"11\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
    os << "<text x=\"" << num(f.left - 6) << "\" y=\"" << num(f.py(yv) + 4)
       << "\" font-size=\"11\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
  }
  os << "<text x=\"" << num(f.left + f.width / 2) << "\" y=\"" << num(f.top + f.height + 34)
     << "\" font-size=\"13\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  os << "<text x=\"" << num(f.left - 40) << "\" y=\"" << num(f.top + f.height / 2)
     << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 " << num(f.left - 40)
     << " " << num(f.top + f.height / 2) << ")\">" << ylabel << "</text>\n";
}

void polyline(std::ostringstream& os, const Frame& f, const std::vector<double>& xs,
              const std::vector<double>& ys, const std::string& style) {
  os << "<polyline fill=\"none\" " << style << " points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double y = std::clamp(ys[i], f.y0, f.y1);
    os << num(f.px(xs[i])) << "," << num(f.py(y)) << (i + 1 < xs.size() ? " " : "");
  }
  os << "\"/>\n";
}

std::pair<double, double> padded_range(double lo, double hi) {
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

std::string profile_svg(const Trajectory& traj, const Mesh& mesh, const std::string& title) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"360\" "
        "viewBox=\"0 0 900 360\">\n<rect width=\"900\" height=\"360\" fill=\"white\"/>\n";
  os << "<text x=\"450\" y=\"22\" font-size=\"14\" text-anchor=\"middle\">" << title << "</text>\n";
  const auto& first = traj.snapshots.front().state;
  const auto& last = traj.snapshots.back().state;
  const Array x = mesh.nodes();
  const std::vector<double> xs(x.begin(), x.end());
  const double x0 = x(0), x1 = x(x.size() - 1);

  auto panel = [&](double left, const Array& a0, const Array& a1, const std::string& name) {
    const auto [lo, hi] = padded_range(std::min(a0.minCoeff(), a1.minCoeff()),
                                       std::max(a0.maxCoeff(), a1.maxCoeff()));
    const Frame f{left, 40, 350, 260, x0, x1, lo, hi};
    axes(os, f, "x", name);
    polyline(os, f, xs, std::vector<double>(a0.begin(), a0.end()),
             "stroke=\"gray\" stroke-dasharray=\"4,3\"");
    polyline(os, f, xs, std::vector<double>(a1.begin(), a1.end()), "stroke=\"black\"");
  };
  panel(70, first.rho, last.rho, "rho");
  panel(520, first.u, last.u, "u");
  os << "<text x=\"450\" y=\"352\" font-size=\"11\" text-anchor=\"middle\">dashed: t = "
     << tick(traj.snapshots.front().t) << ", solid: t = " << tick(traj.snapshots.back().t)
     << (traj.overflow ? " (overflow)" : "") << "</text>\n</svg>\n";
  return os.str();
}

std::string region_svg(const RegionMap& map, Regularization variant, const std::string& title) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
        "viewBox=\"0 0 640 480\">\n<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  os << "<text x=\"320\" y=\"22\" font-size=\"14\" text-anchor=\"middle\">" << title << "</text>\n";
  const double a_max = *std::max_element(map.alphas.begin(), map.alphas.end());
  const double b_max = *std::max_element(map.betas.begin(), map.betas.end());
  const Frame f{70, 40, 540, 380, 0.0, 1.05 * a_max, 0.0, 1.1 * b_max};
  axes(os, f, "alpha", "beta");

  std::vector<double> as, nec, crit, suff;
  const bool with_sufficient = map.overlays.sufficient.has_value();
  for (int i = 1; i <= 400; ++i) {
    const double a = f.x1 * i / 400.0;
    const LinearizedParams p{a, 1.0, map.kappa, variant};
    as.push_back(a);
    nec.push_back(necessary_threshold(p));
    crit.push_back(criterion_threshold(p));
    if (with_sufficient) suff.push_back(sufficient_threshold_sw(a));
  }
  polyline(os, f, as, nec, "stroke=\"black\" stroke-width=\"1.5\"");
  polyline(os, f, as, crit, "stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"7,4\"");
  if (with_sufficient) {
    polyline(os, f, as, suff, "stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"8,3,2,3\"");
  }
  for (std::size_t i = 0; i < map.alphas.size(); ++i) {
    for (std::size_t j = 0; j < map.betas.size(); ++j) {
      const bool good = map.at(i, j).classification == Classification::Conservative;
      os << "<circle cx=\"" << num(f.px(map.alphas[i])) << "\" cy=\"" << num(f.py(map.betas[j]))
         << "\" r=\"4\" stroke=\"black\" fill=\"" << (good ? "black" : "white") << "\"/>\n";
    }
  }
  os << "<text x=\"600\" y=\"60\" font-size=\"11\" text-anchor=\"end\">solid: necessary, dashed: "
        "criterion"
     << (with_sufficient ? ", dot-dash: sufficient" : "") << "</text>\n</svg>\n";
  return os.str();
}

}  // namespace qgd
