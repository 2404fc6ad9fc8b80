#pragma once

#include <string>
#include <vector>

#include "windplan/geometry.hpp"

namespace windplan {

/// Axis-aligned cube centered on the aircraft position, side length s_bb.
struct BoundingBox {
  double side = 30.0;

  bool valid() const { return side > 0.0; }
};

enum class DemFormat { esri_ascii_grid, csv_xyz };

/// 2.5D terrain altitude grid. Also acts as the obstacle set: everything below
/// terrain plus the safety margin is occupied. Cell (i, j) spans
/// [origin + i*cell, origin + (i+1)*cell] in x (same in y); heights are stored
/// row-major with i varying fastest. Immutable after construction.
struct HeightMap {
  double origin_x = 0.0;  // lower-left corner of cell (0,0)
  double origin_y = 0.0;
  double cell_size = 30.0;
  int nx = 0;
  int ny = 0;
  std::vector<double> heights;  // ny rows of nx values, meters
  double safety_margin = 0.0;
  bool preevaluated = false;

  double at(int i, int j) const { return heights[static_cast<size_t>(j) * nx + i]; }
  double& at(int i, int j) { return heights[static_cast<size_t>(j) * nx + i]; }

  double max_x() const { return origin_x + nx * cell_size; }
  double max_y() const { return origin_y + ny * cell_size; }
  bool contains(double x, double y) const {
    return x >= origin_x && x <= max_x() && y >= origin_y && y <= max_y();
  }

  /// Cell index along x for a point inside the extent. Boundary points belong
  /// to both adjacent cells; the lower index wins.
  int cell_index_x(double x) const;
  int cell_index_y(double y) const;

  double min_height() const;
  double max_height() const;
};

/// Parse a DEM file. ESRI ASCII grids follow the usual header
/// (ncols/nrows/xllcorner/yllcorner/cellsize/NODATA_value, rows north to south);
/// CSV files hold "x,y,z" triples forming a complete rectangular grid.
/// NODATA cells and non-rectangular grids are rejected.
HeightMap load_dem(const std::string& path, DemFormat format);

/// Write a map in the given format (used by the scenario generators and tests).
void save_dem(const HeightMap& map, const std::string& path, DemFormat format);

/// Terrain altitude at (x, y), nearest-cell (piecewise constant) semantics.
/// Throws std::out_of_range outside the map extent.
double terrain_height(const HeightMap& map, double x, double y);

/// Resample to a new cell size covering the same extent (nearest-cell max over
/// covered source cells, conservative). Used to store maps at bounding-box
/// resolution internally.
HeightMap resample(const HeightMap& map, double new_cell_size);

/// Max-filter the map so that a single-cell lookup bounds the terrain under a
/// bounding-box footprint anywhere inside that cell. Each output cell holds the
/// max of source heights over the square of half-width (cell + side)/2 around
/// its center; edges clamp to the map extent. Must not be chained: always apply
/// to the original-resolution source.
HeightMap preevaluate(const HeightMap& map, const BoundingBox& bbox);

/// True iff the bottom of the bounding box (z - side/2) clears terrain plus the
/// safety margin under the whole box footprint. Out-of-extent space counts as
/// obstacle. On a pre-evaluated map exactly one cell is consulted, on an
/// original map every footprint cell (up to four when cell_size == side).
bool state_valid(const HeightMap& map, const Vec3& pos, const BoundingBox& bbox);

/// Check every state produced by `state_at` at arc-length steps <= d_icc along
/// [0, total_length], endpoints included.
template <class StateFn>
bool motion_valid_sampled(const HeightMap& map, double total_length, double d_icc,
                          const BoundingBox& bbox, StateFn&& state_at) {
  if (total_length <= 0.0) return state_valid(map, state_at(0.0), bbox);
  const int n = std::max(1, static_cast<int>(std::ceil(total_length / d_icc)));
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    if (!state_valid(map, state_at(t), bbox)) return false;
  }
  return true;
}

}  // namespace windplan
