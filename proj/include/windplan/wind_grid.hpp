#pragma once

#include <string>
#include <vector>

#include "windplan/geometry.hpp"
#include "windplan/terrain.hpp"

namespace windplan {

enum class SpacingKind { equidistant, sqrt_spacing, linear, squared };

SpacingKind spacing_from_string(const std::string& s);
std::string to_string(SpacingKind k);

/// Vertical spacing fraction gamma(n) in [0, 1]: gamma(0) = 0, gamma(N_z-1) = 1,
/// strictly increasing. "equidistant" reduces to the linear fraction here; its
/// position-dependent form (equal absolute z steps measured from the global
/// minimum terrain height) lives in build_grid.
double gamma_fraction(SpacingKind kind, int n, int n_z);

/// Terrain-following structured grid: z(i, j, n) = h(i, j) + (t - h(i, j)) * gamma(n)
/// with a horizontal domain top t. Immutable after construction.
struct TerrainGrid {
  double origin_x = 0.0;
  double origin_y = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  int nx = 0;
  int ny = 0;
  int nz = 0;
  SpacingKind spacing = SpacingKind::linear;
  double domain_factor = 3.5;
  double top = 0.0;                    // domain top altitude t, constant
  std::vector<double> terrain;         // h(i, j), nx*ny, i fastest
  std::vector<double> levels;          // gamma(n) for the shared-fraction kinds, size nz
  std::vector<double> column_levels;   // per-column gamma for equidistant, nx*ny*nz, else empty

  size_t column_count() const { return static_cast<size_t>(nx) * ny; }
  size_t node_count() const { return column_count() * nz; }
  size_t node_index(int i, int j, int n) const {
    return (static_cast<size_t>(n) * ny + j) * nx + i;
  }

  double x_at(int i) const { return origin_x + i * dx; }
  double y_at(int j) const { return origin_y + j * dy; }
  double terrain_at(int i, int j) const { return terrain[static_cast<size_t>(j) * nx + i]; }
  double gamma_at(int i, int j, int n) const {
    if (!column_levels.empty()) return column_levels[(static_cast<size_t>(j) * nx + i) * nz + n];
    return levels[n];
  }
  double z_at(int i, int j, int n) const {
    const double h = terrain_at(i, j);
    return h + (top - h) * gamma_at(i, j, n);
  }
};

/// Build the terrain-following grid over the DEM extent. The domain top is
/// max(domain_factor * max terrain height, max terrain height + min_top_clearance),
/// keeping columns over flat terrain non-degenerate.
TerrainGrid build_grid(const HeightMap& dem, int nx, int ny, int nz, SpacingKind spacing,
                       double domain_factor, double min_top_clearance = 100.0);

/// Vertical wind sounding at one horizontal location.
struct WindProfile {
  double x = 0.0;
  double y = 0.0;
  struct Level {
    double z;  // altitude, meters
    double u, v, w;
  };
  std::vector<Level> levels;  // altitudes strictly increasing, >= 2 entries
};

enum class FieldKind { initial, adjusted, synthetic };

enum class OutOfExtentPolicy { zero_wind, error };

/// Wind vectors on a TerrainGrid. Immutable after construction.
struct WindField {
  TerrainGrid grid;
  std::vector<Vec3> vectors;  // node_count() entries
  FieldKind kind = FieldKind::initial;

  const Vec3& at(int i, int j, int n) const { return vectors[grid.node_index(i, j, n)]; }
  Vec3& at(int i, int j, int n) { return vectors[grid.node_index(i, j, n)]; }
};

/// Interpolate coarse profiles onto the grid: linear in altitude per profile
/// (clamped outside the sounding span), then horizontally — constant for one
/// profile, bilinear when the profiles form a regular lattice, inverse-distance
/// weighting (power 2, 4 nearest) for scattered sets.
WindField interpolate_initial(const std::vector<WindProfile>& profiles, const TerrainGrid& grid);

/// Wind at an arbitrary position: per-column linear interpolation in altitude
/// (clamped below terrain / above top), bilinear across the four surrounding
/// columns. Continuous across cell faces; exact for fields linear in altitude.
Vec3 sample_wind(const WindField& field, const Vec3& pos,
                 OutOfExtentPolicy policy = OutOfExtentPolicy::zero_wind);

/// Component-wise minima and maxima over all nodes (time-heuristic input).
struct WindEnvelope {
  Vec3 min_c;
  Vec3 max_c;
};
WindEnvelope wind_envelope(const WindField& field);

std::vector<WindProfile> load_profiles_json(const std::string& path);

}  // namespace windplan
