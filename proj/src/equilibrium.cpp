#include "marketfield/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "marketfield/quadrature.hpp"

namespace marketfield::equilibrium {

Cx inner(const CxVec& a, const CxVec& b) {
  Cx acc;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

void MoneyState::validate() const {
  if (coefficients.size() != basis.size()) {
    throw std::invalid_argument("MoneyState: coefficient/basis size mismatch");
  }
  for (const auto& m : basis) {
    const double n = std::sqrt(std::abs(inner(m, m)));
    if (std::fabs(n - 1.0) > 1e-12) {
      throw std::invalid_argument("MoneyState: basis vector is not unit norm");
    }
  }
}

CxVec MoneyState::total_money() const {
  CxVec total;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (total.size() < basis[k].size()) total.resize(basis[k].size());
    for (std::size_t i = 0; i < basis[k].size(); ++i) total[i] += coefficients[k] * basis[k][i];
  }
  return total;
}

std::vector<double> activity_of(const std::vector<CxVec>& trajectory, double dt) {
  if (trajectory.size() < 3) {
    throw TooFewSamples("activity_of: need at least 3 trajectory samples");
  }
  std::vector<double> out;
  out.reserve(trajectory.size() - 2);
  const Cx iunit(0.0, 1.0);
  for (std::size_t n = 1; n + 1 < trajectory.size(); ++n) {
    CxVec dm(trajectory[n].size());
    for (std::size_t i = 0; i < dm.size(); ++i) {
      dm[i] = (trajectory[n + 1][i] - trajectory[n - 1][i]) / (2.0 * dt);
    }
    out.push_back((iunit * inner(trajectory[n], dm)).real());
  }
  return out;
}

Cx evolve_coefficient(const std::function<Cx(double)>& connection,
                      const std::function<double(double)>& activity, double t) {
  const Cx iunit(0.0, 1.0);
  const Cx exponent = quadrature::integrate<Cx>(
      [&](double u) { return connection(u) + iunit * activity(u); }, 0.0, t, 1e-13);
  return std::exp(-exponent);
}

Cx berry_connection(const std::function<CxVec(double)>& basis_vector, double x, double dx) {
  if (!(dx > 0.0)) throw std::invalid_argument("berry_connection: dx must be > 0");
  const CxVec plus = basis_vector(x + dx);
  const CxVec minus = basis_vector(x - dx);
  CxVec dm(plus.size());
  for (std::size_t i = 0; i < dm.size(); ++i) dm[i] = (plus[i] - minus[i]) / (2.0 * dx);
  return Cx(0.0, 1.0) * inner(basis_vector(x), dm);
}

std::vector<std::vector<Cx>> parallel_transport_check(
    const std::function<std::vector<CxVec>(double)>& family, double x, double dx) {
  const auto at = family(x);
  const auto plus = family(x + dx);
  const auto minus = family(x - dx);
  if (at.size() < 2) {
    throw std::invalid_argument("parallel_transport_check: need at least 2 basis vectors");
  }
  const std::size_t nb = at.size();
  std::vector<std::vector<Cx>> out(nb, std::vector<Cx>(nb));
  for (std::size_t k = 0; k < nb; ++k) {
    CxVec dm(at[k].size());
    for (std::size_t i = 0; i < dm.size(); ++i) {
      dm[i] = (plus[k][i] - minus[k][i]) / (2.0 * dx);
    }
    for (std::size_t n = 0; n < nb; ++n) {
      if (n == k) continue;
      out[n][k] = inner(at[n], dm);
    }
  }
  return out;
}

double berry_phase_line(const ChoiceSampler& choice, const std::vector<Vec3>& contour) {
  if (contour.size() < 2 || norm(contour.front() - contour.back()) > 1e-12) {
    throw OpenContour("berry_phase_line: contour must be closed (first == last)");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < contour.size(); ++i) {
    const Vec3 mid = (contour[i] + contour[i + 1]) * 0.5;
    acc += dot(choice(mid), contour[i + 1] - contour[i]);
  }
  return acc;
}

SurfaceMesh make_disk_mesh(const Vec3& center, double radius, int n_radial, int n_angular) {
  SurfaceMesh mesh;
  const auto ring_point = [&](int ring, int j) {
    const double r = radius * ring / n_radial;
    const double a = 2.0 * std::numbers::pi * j / n_angular;
    return Vec3{center.x + r * std::cos(a), center.y + r * std::sin(a), center.z};
  };
  // Inner fan.
  for (int j = 0; j < n_angular; ++j) {
    mesh.triangles.push_back({center, ring_point(1, j), ring_point(1, j + 1)});
  }
  // Ring quads split into triangle pairs.
  for (int ring = 1; ring < n_radial; ++ring) {
    for (int j = 0; j < n_angular; ++j) {
      const Vec3 a = ring_point(ring, j);
      const Vec3 b = ring_point(ring + 1, j);
      const Vec3 c = ring_point(ring + 1, j + 1);
      const Vec3 d = ring_point(ring, j + 1);
      mesh.triangles.push_back({a, b, c});
      mesh.triangles.push_back({a, c, d});
    }
  }
  for (int j = 0; j <= n_angular; ++j) mesh.boundary.push_back(ring_point(n_radial, j));
  return mesh;
}

namespace {

double dist_point_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = dot(ab, ab);
  double u = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  u = std::clamp(u, 0.0, 1.0);
  return norm(p - (a + ab * u));
}

// Edges of a triangle soup that occur exactly once, by vertex matching with
// tolerance. Meshes here are small; the quadratic scan is fine.
std::vector<std::pair<Vec3, Vec3>> boundary_edges(const std::vector<Triangle>& tris) {
  std::vector<Vec3> verts;
  const auto vid = [&](const Vec3& v) -> std::size_t {
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (norm(verts[i] - v) < 1e-9) return i;
    }
    verts.push_back(v);
    return verts.size() - 1;
  };
  struct Edge {
    std::size_t a, b;
    int count;
  };
  std::vector<Edge> edges;
  const auto add_edge = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    for (auto& e : edges) {
      if (e.a == a && e.b == b) {
        ++e.count;
        return;
      }
    }
    edges.push_back({a, b, 1});
  };
  for (const auto& t : tris) {
    const std::size_t ia = vid(t.a), ib = vid(t.b), ic = vid(t.c);
    add_edge(ia, ib);
    add_edge(ib, ic);
    add_edge(ic, ia);
  }
  std::vector<std::pair<Vec3, Vec3>> out;
  for (const auto& e : edges) {
    if (e.count == 1) out.emplace_back(verts[e.a], verts[e.b]);
  }
  return out;
}

Vec3 curl_fd(const ChoiceSampler& f, const Vec3& x, double h) {
  const auto d = [&](int comp, const Vec3& e) {
    const Vec3 fp = f(x + e * h);
    const Vec3 fm = f(x - e * h);
    const Vec3 diff = (fp - fm) / (2.0 * h);
    return comp == 0 ? diff.x : (comp == 1 ? diff.y : diff.z);
  };
  const Vec3 ex{1, 0, 0}, ey{0, 1, 0}, ez{0, 0, 1};
  return {d(2, ey) - d(1, ez), d(0, ez) - d(2, ex), d(1, ex) - d(0, ey)};
}

}  // namespace

double berry_phase_surface(const ChoiceSampler& choice, const SurfaceMesh& mesh,
                           const std::vector<Vec3>& contour, double fd_step) {
  if (contour.size() < 2 || norm(contour.front() - contour.back()) > 1e-12) {
    throw OpenContour("berry_phase_surface: contour must be closed");
  }
  // Every boundary edge of the mesh must lie on the given contour.
  const double tol = 1e-6;
  for (const auto& [a, b] : boundary_edges(mesh.triangles)) {
    for (const Vec3& v : {a, b, (a + b) * 0.5}) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i + 1 < contour.size(); ++i) {
        best = std::min(best, dist_point_segment(v, contour[i], contour[i + 1]));
      }
      if (best > tol) {
        throw MeshBoundaryMismatch(
            "berry_phase_surface: mesh boundary does not match the contour");
      }
    }
  }
  double acc = 0.0;
  for (const auto& t : mesh.triangles) {
    const Vec3 centroid = (t.a + t.b + t.c) / 3.0;
    const Vec3 area = cross(t.b - t.a, t.c - t.a) * 0.5;
    acc += dot(curl_fd(choice, centroid, fd_step), area);
  }
  return acc;
}

FieldGrid FieldGrid::allocate(const Vec3& origin, const Vec3& spacing, int nx, int ny, int nz,
                              double t0, double dt, int nt) {
  FieldGrid g;
  g.origin = origin;
  g.spacing = spacing;
  g.nx = nx;
  g.ny = ny;
  g.nz = nz;
  g.t0 = t0;
  g.dt = dt;
  g.nt = nt;
  const std::size_t n = static_cast<std::size_t>(nx) * ny * nz;
  g.ch.assign(nt, std::vector<Vec3>(n));
  g.phi.assign(nt, std::vector<double>(n));
  g.ln_m.assign(nt, std::vector<double>(n));
  return g;
}

namespace {

// Second-order spatial first derivative of a sampled scalar along axis:
// centered at interior points, three-point one-sided on the faces.
template <typename Field, typename Get>
double ddx(const FieldGrid& g, const Field& f, Get&& get, int i, int j, int k, int axis) {
  const int di = axis == 0, dj = axis == 1, dk = axis == 2;
  const int pos = axis == 0 ? i : (axis == 1 ? j : k);
  const int extent = axis == 0 ? g.nx : (axis == 1 ? g.ny : g.nz);
  const double h = axis == 0 ? g.spacing.x : (axis == 1 ? g.spacing.y : g.spacing.z);
  if (pos == 0) {
    return (-3.0 * get(f[g.index(i, j, k)]) + 4.0 * get(f[g.index(i + di, j + dj, k + dk)]) -
            get(f[g.index(i + 2 * di, j + 2 * dj, k + 2 * dk)])) /
           (2.0 * h);
  }
  if (pos == extent - 1) {
    return (3.0 * get(f[g.index(i, j, k)]) - 4.0 * get(f[g.index(i - di, j - dj, k - dk)]) +
            get(f[g.index(i - 2 * di, j - 2 * dj, k - 2 * dk)])) /
           (2.0 * h);
  }
  return (get(f[g.index(i + di, j + dj, k + dk)]) - get(f[g.index(i - di, j - dj, k - dk)])) /
         (2.0 * h);
}

double get_scalar(double v) { return v; }

}  // namespace

void construct_fields(FieldGrid& grid) {
  if (grid.nt < 3) throw TooFewSlices("construct_fields: need at least 3 time slices");
  if (grid.nx < 3 || grid.ny < 3 || grid.nz < 3) {
    throw IncompleteGrid("construct_fields: need at least 3 points per spatial axis");
  }
  const std::size_t n = static_cast<std::size_t>(grid.nx) * grid.ny * grid.nz;
  grid.c.assign(grid.nt, std::vector<Vec3>(n));
  grid.p.assign(grid.nt, std::vector<Vec3>(n));
  grid.one_sided_time.assign(grid.nt, 0);
  grid.one_sided_time.front() = 1;
  grid.one_sided_time.back() = 1;

  for (int t = 0; t < grid.nt; ++t) {
    // dCh/dt, one-sided at the first and last slices.
    const int lo = std::max(t - 1, 0);
    const int hi = std::min(t + 1, grid.nt - 1);
    const double denom = (hi - lo) * grid.dt;
    for (int k = 0; k < grid.nz; ++k) {
      for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
          const std::size_t idx = grid.index(i, j, k);
          const Vec3 dch_dt = (grid.ch[hi][idx] - grid.ch[lo][idx]) / denom;

          const Vec3 grad_phi{ddx(grid, grid.phi[t], get_scalar, i, j, k, 0),
                              ddx(grid, grid.phi[t], get_scalar, i, j, k, 1),
                              ddx(grid, grid.phi[t], get_scalar, i, j, k, 2)};
          const auto gx = [](const Vec3& v) { return v.x; };
          const auto gy = [](const Vec3& v) { return v.y; };
          const auto gz = [](const Vec3& v) { return v.z; };
          const Vec3 curl_ch{ddx(grid, grid.ch[t], gz, i, j, k, 1) -
                                 ddx(grid, grid.ch[t], gy, i, j, k, 2),
                             ddx(grid, grid.ch[t], gx, i, j, k, 2) -
                                 ddx(grid, grid.ch[t], gz, i, j, k, 0),
                             ddx(grid, grid.ch[t], gy, i, j, k, 0) -
                                 ddx(grid, grid.ch[t], gx, i, j, k, 1)};
          grid.c[t][idx] = -dch_dt - grad_phi;
          grid.p[t][idx] = curl_ch;
        }
      }
    }
  }
}

namespace {

struct Accumulator {
  double max_abs = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;

  void add(double r) {
    max_abs = std::max(max_abs, std::fabs(r));
    sum_sq += r * r;
    ++count;
  }
  void add(const Vec3& r) {
    add(r.x);
    add(r.y);
    add(r.z);
  }
  ResidualEntry entry() const {
    return {max_abs, count ? std::sqrt(sum_sq / static_cast<double>(count)) : 0.0};
  }
};

}  // namespace

ResidualReport residual_check(const FieldGrid& grid) {
  const std::size_t n = static_cast<std::size_t>(grid.nx) * grid.ny * grid.nz;
  const bool complete = grid.nt >= 3 &&
                        grid.ch.size() == static_cast<std::size_t>(grid.nt) &&
                        grid.phi.size() == static_cast<std::size_t>(grid.nt) &&
                        grid.ln_m.size() == static_cast<std::size_t>(grid.nt) &&
                        grid.c.size() == static_cast<std::size_t>(grid.nt) &&
                        grid.p.size() == static_cast<std::size_t>(grid.nt) && n > 0 &&
                        grid.ch[0].size() == n;
  if (!complete) {
    throw IncompleteGrid("residual_check: grid fields missing or inconsistent");
  }
  if (grid.nx < 5 || grid.ny < 5 || grid.nz < 5) {
    throw IncompleteGrid("residual_check: no interior points");
  }

  // Residuals are measured with fourth-order centered stencils. The derived
  // fields come from second-order stencils; had the residual reused the same
  // operators, discrete curl-of-gradient identities would cancel exactly and
  // hide the truncation error the residual is meant to expose.
  const auto d4 = [&grid](const auto& f, auto&& get, int i, int j, int k, int axis) {
    const int di = axis == 0, dj = axis == 1, dk = axis == 2;
    const double h = axis == 0 ? grid.spacing.x : (axis == 1 ? grid.spacing.y : grid.spacing.z);
    return (-get(f[grid.index(i + 2 * di, j + 2 * dj, k + 2 * dk)]) +
            8.0 * get(f[grid.index(i + di, j + dj, k + dk)]) -
            8.0 * get(f[grid.index(i - di, j - dj, k - dk)]) +
            get(f[grid.index(i - 2 * di, j - 2 * dj, k - 2 * dk)])) /
           (12.0 * h);
  };

  Accumulator money, comp_curl, profit_div, profit_curl, choice_price, inflation;
  const auto gx = [](const Vec3& v) { return v.x; };
  const auto gy = [](const Vec3& v) { return v.y; };
  const auto gz = [](const Vec3& v) { return v.z; };

  for (int t = 2; t + 2 < grid.nt; ++t) {
    for (int k = 2; k + 2 < grid.nz; ++k) {
      for (int j = 2; j + 2 < grid.ny; ++j) {
        for (int i = 2; i + 2 < grid.nx; ++i) {
          const std::size_t idx = grid.index(i, j, k);

          const auto div_of = [&](const std::vector<Vec3>& f) {
            return d4(f, gx, i, j, k, 0) + d4(f, gy, i, j, k, 1) + d4(f, gz, i, j, k, 2);
          };
          const auto curl_of = [&](const std::vector<Vec3>& f) {
            return Vec3{d4(f, gz, i, j, k, 1) - d4(f, gy, i, j, k, 2),
                        d4(f, gx, i, j, k, 2) - d4(f, gz, i, j, k, 0),
                        d4(f, gy, i, j, k, 0) - d4(f, gx, i, j, k, 1)};
          };
          const auto dt4 = [&](const auto& slices, auto&& get) {
            return (-get(slices[t + 2][idx]) + 8.0 * get(slices[t + 1][idx]) -
                    8.0 * get(slices[t - 1][idx]) + get(slices[t - 2][idx])) /
                   (12.0 * grid.dt);
          };
          const auto dtt4 = [&](const auto& slices, auto&& get) {
            return (-get(slices[t + 2][idx]) + 16.0 * get(slices[t + 1][idx]) -
                    30.0 * get(slices[t][idx]) + 16.0 * get(slices[t - 1][idx]) -
                    get(slices[t - 2][idx])) /
                   (12.0 * grid.dt * grid.dt);
          };
          const auto identity = [](const Vec3& v) { return v; };

          const double dlnm_dt = dt4(grid.ln_m, get_scalar);
          const double dphi_dt = dt4(grid.phi, get_scalar);
          const double d2phi_dt2 = dtt4(grid.phi, get_scalar);
          const Vec3 dp_dt = dt4(grid.p, identity);
          const Vec3 dc_dt = dt4(grid.c, identity);
          const Vec3 capital = {d4(grid.ln_m[t], get_scalar, i, j, k, 0),
                                d4(grid.ln_m[t], get_scalar, i, j, k, 1),
                                d4(grid.ln_m[t], get_scalar, i, j, k, 2)};

          money.add(div_of(grid.c[t]) + dlnm_dt);
          comp_curl.add(curl_of(grid.c[t]) + dp_dt);
          profit_div.add(div_of(grid.p[t]));
          profit_curl.add(curl_of(grid.p[t]) - dc_dt - capital);
          choice_price.add(div_of(grid.ch[t]) + dphi_dt);

          const auto lap_axis = [&](int di, int dj, int dk, double h) {
            return (-grid.phi[t][grid.index(i + 2 * di, j + 2 * dj, k + 2 * dk)] +
                    16.0 * grid.phi[t][grid.index(i + di, j + dj, k + dk)] -
                    30.0 * grid.phi[t][idx] +
                    16.0 * grid.phi[t][grid.index(i - di, j - dj, k - dk)] -
                    grid.phi[t][grid.index(i - 2 * di, j - 2 * dj, k - 2 * dk)]) /
                   (12.0 * h * h);
          };
          const double lap_phi = lap_axis(1, 0, 0, grid.spacing.x) +
                                 lap_axis(0, 1, 0, grid.spacing.y) +
                                 lap_axis(0, 0, 1, grid.spacing.z);
          inflation.add(lap_phi - dlnm_dt - d2phi_dt2);
        }
      }
    }
  }

  ResidualReport report;
  report.money_balance = money.entry();
  report.competition_curl = comp_curl.entry();
  report.profit_divergence = profit_div.entry();
  report.profit_curl = profit_curl.entry();
  report.choice_price = choice_price.entry();
  report.inflation = inflation.entry();
  return report;
}

}  // namespace marketfield::equilibrium
