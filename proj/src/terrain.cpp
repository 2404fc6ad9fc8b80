#include "windplan/terrain.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace windplan {

namespace {

int boundary_cell_index(double coord, double origin, double cell, int count) {
  // Closed cells; a point on a shared edge picks the lower index.
  const double u = (coord - origin) / cell;
  int i = static_cast<int>(std::ceil(u)) - 1;
  if (i < 0) i = 0;
  if (i >= count) i = count - 1;
  return i;
}

void validate(const HeightMap& m, const std::string& what) {
  if (m.nx < 2 || m.ny < 2) throw std::runtime_error(what + ": grid must be at least 2x2");
  if (!(m.cell_size > 0.0)) throw std::runtime_error(what + ": cell size must be positive");
  for (double h : m.heights) {
    if (!std::isfinite(h)) throw std::runtime_error(what + ": non-finite height");
  }
}

}  // namespace

int HeightMap::cell_index_x(double x) const {
  return boundary_cell_index(x, origin_x, cell_size, nx);
}

int HeightMap::cell_index_y(double y) const {
  return boundary_cell_index(y, origin_y, cell_size, ny);
}

double HeightMap::min_height() const {
  return *std::min_element(heights.begin(), heights.end());
}

double HeightMap::max_height() const {
  return *std::max_element(heights.begin(), heights.end());
}

static HeightMap load_esri_ascii(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open DEM file: " + path);

  std::map<std::string, double> header;
  std::string key;
  // Header keys until the first purely numeric token.
  for (int k = 0; k < 6; ++k) {
    std::streampos pos = in.tellg();
    if (!(in >> key)) throw std::runtime_error("truncated ESRI header in " + path);
    std::string lower;
    for (char c : key) lower.push_back(static_cast<char>(std::tolower(c)));
    if (!lower.empty() && (std::isdigit(lower[0]) || lower[0] == '-' || lower[0] == '+')) {
      in.seekg(pos);
      break;
    }
    double value;
    if (!(in >> value)) throw std::runtime_error("bad ESRI header value for " + key);
    header[lower] = value;
  }
  for (const char* req : {"ncols", "nrows", "xllcorner", "yllcorner", "cellsize"}) {
    if (!header.count(req)) throw std::runtime_error(std::string("missing ESRI header field ") + req);
  }

  HeightMap m;
  m.nx = static_cast<int>(header["ncols"]);
  m.ny = static_cast<int>(header["nrows"]);
  m.origin_x = header["xllcorner"];
  m.origin_y = header["yllcorner"];
  m.cell_size = header["cellsize"];
  const bool has_nodata = header.count("nodata_value") > 0;
  const double nodata = has_nodata ? header["nodata_value"] : 0.0;

  if (m.nx < 2 || m.ny < 2) throw std::runtime_error("ESRI grid must be at least 2x2: " + path);
  m.heights.assign(static_cast<size_t>(m.nx) * m.ny, 0.0);

  // ESRI rows run north to south: the first row is the largest y index.
  for (int row = 0; row < m.ny; ++row) {
    const int j = m.ny - 1 - row;
    for (int i = 0; i < m.nx; ++i) {
      double h;
      if (!(in >> h)) throw std::runtime_error("incomplete ESRI grid data in " + path);
      if (has_nodata && h == nodata) throw std::runtime_error("NODATA cell in " + path);
      m.at(i, j) = h;
    }
  }
  double extra;
  if (in >> extra) throw std::runtime_error("trailing data after grid in " + path);
  validate(m, path);
  return m;
}

static HeightMap load_csv_xyz(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open DEM file: " + path);

  struct Sample {
    double x, y, z;
  };
  std::vector<Sample> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("x,", 0) == 0 || line.rfind("#", 0) == 0) continue;  // header / comment
    std::istringstream ls(line);
    Sample s;
    char c1, c2;
    if (!(ls >> s.x >> c1 >> s.y >> c2 >> s.z) || c1 != ',' || c2 != ',') {
      throw std::runtime_error("malformed CSV line in " + path + ": " + line);
    }
    if (!std::isfinite(s.z)) throw std::runtime_error("non-finite height in " + path);
    samples.push_back(s);
  }
  if (samples.empty()) throw std::runtime_error("empty CSV DEM: " + path);

  auto near = [](double a, double b) { return std::abs(a - b) < 1e-6; };
  std::vector<double> xs, ys;
  for (const auto& s : samples) {
    if (std::none_of(xs.begin(), xs.end(), [&](double v) { return near(v, s.x); })) xs.push_back(s.x);
    if (std::none_of(ys.begin(), ys.end(), [&](double v) { return near(v, s.y); })) ys.push_back(s.y);
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  if (xs.size() < 2 || ys.size() < 2) throw std::runtime_error("CSV grid must be at least 2x2: " + path);
  if (samples.size() != xs.size() * ys.size()) {
    throw std::runtime_error("CSV DEM is not a complete rectangular grid: " + path);
  }
  const double dx = xs[1] - xs[0];
  for (size_t i = 1; i < xs.size(); ++i) {
    if (!near(xs[i] - xs[i - 1], dx)) throw std::runtime_error("non-uniform x spacing in " + path);
  }
  for (size_t j = 1; j < ys.size(); ++j) {
    if (!near(ys[j] - ys[j - 1], dx)) throw std::runtime_error("non-uniform y spacing in " + path);
  }

  HeightMap m;
  m.nx = static_cast<int>(xs.size());
  m.ny = static_cast<int>(ys.size());
  m.cell_size = dx;
  // CSV samples are cell centers.
  m.origin_x = xs[0] - dx / 2.0;
  m.origin_y = ys[0] - dx / 2.0;
  m.heights.assign(static_cast<size_t>(m.nx) * m.ny, std::nan(""));
  for (const auto& s : samples) {
    const int i = static_cast<int>(std::lround((s.x - xs[0]) / dx));
    const int j = static_cast<int>(std::lround((s.y - ys[0]) / dx));
    if (!std::isnan(m.at(i, j))) throw std::runtime_error("duplicate CSV sample in " + path);
    m.at(i, j) = s.z;
  }
  validate(m, path);
  return m;
}

HeightMap load_dem(const std::string& path, DemFormat format) {
  switch (format) {
    case DemFormat::esri_ascii_grid:
      return load_esri_ascii(path);
    case DemFormat::csv_xyz:
      return load_csv_xyz(path);
  }
  throw std::runtime_error("unknown DEM format");
}

void save_dem(const HeightMap& map, const std::string& path, DemFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write DEM file: " + path);
  out.precision(17);
  if (format == DemFormat::esri_ascii_grid) {
    out << "ncols " << map.nx << "\n"
        << "nrows " << map.ny << "\n"
        << "xllcorner " << map.origin_x << "\n"
        << "yllcorner " << map.origin_y << "\n"
        << "cellsize " << map.cell_size << "\n"
        << "NODATA_value -9999\n";
    for (int row = 0; row < map.ny; ++row) {
      const int j = map.ny - 1 - row;
      for (int i = 0; i < map.nx; ++i) out << map.at(i, j) << (i + 1 == map.nx ? '\n' : ' ');
    }
  } else {
    out << "x,y,z\n";
    for (int j = 0; j < map.ny; ++j) {
      const double y = map.origin_y + (j + 0.5) * map.cell_size;
      for (int i = 0; i < map.nx; ++i) {
        const double x = map.origin_x + (i + 0.5) * map.cell_size;
        out << x << "," << y << "," << map.at(i, j) << "\n";
      }
    }
  }
}

double terrain_height(const HeightMap& map, double x, double y) {
  if (!map.contains(x, y)) throw std::out_of_range("terrain_height: query outside map extent");
  return map.at(map.cell_index_x(x), map.cell_index_y(y));
}

HeightMap resample(const HeightMap& map, double new_cell_size) {
  if (!(new_cell_size > 0.0)) throw std::runtime_error("resample: cell size must be positive");
  HeightMap out;
  out.origin_x = map.origin_x;
  out.origin_y = map.origin_y;
  out.cell_size = new_cell_size;
  out.nx = std::max(2, static_cast<int>(std::ceil(map.nx * map.cell_size / new_cell_size)));
  out.ny = std::max(2, static_cast<int>(std::ceil(map.ny * map.cell_size / new_cell_size)));
  out.safety_margin = map.safety_margin;
  out.heights.assign(static_cast<size_t>(out.nx) * out.ny, 0.0);
  for (int j = 0; j < out.ny; ++j) {
    const double y0 = out.origin_y + j * new_cell_size;
    const double y1 = y0 + new_cell_size;
    int j0 = static_cast<int>(std::floor((y0 - map.origin_y) / map.cell_size));
    int j1 = static_cast<int>(std::ceil((y1 - map.origin_y) / map.cell_size)) - 1;
    j0 = std::clamp(j0, 0, map.ny - 1);
    j1 = std::clamp(j1, 0, map.ny - 1);
    for (int i = 0; i < out.nx; ++i) {
      const double x0 = out.origin_x + i * new_cell_size;
      const double x1 = x0 + new_cell_size;
      int i0 = static_cast<int>(std::floor((x0 - map.origin_x) / map.cell_size));
      int i1 = static_cast<int>(std::ceil((x1 - map.origin_x) / map.cell_size)) - 1;
      i0 = std::clamp(i0, 0, map.nx - 1);
      i1 = std::clamp(i1, 0, map.nx - 1);
      double h = -std::numeric_limits<double>::infinity();
      for (int jj = j0; jj <= j1; ++jj)
        for (int ii = i0; ii <= i1; ++ii) h = std::max(h, map.at(ii, jj));
      out.at(i, j) = h;
    }
  }
  return out;
}

HeightMap preevaluate(const HeightMap& map, const BoundingBox& bbox) {
  if (map.preevaluated) throw std::runtime_error("preevaluate: map is already pre-evaluated");
  if (!bbox.valid()) throw std::runtime_error("preevaluate: invalid bounding box");
  // Cells touching the relevant collision area x_c +- (cell + side)/2 count,
  // boundary contact included.
  const int radius = static_cast<int>(std::floor(1.0 + bbox.side / (2.0 * map.cell_size) + 1e-12));
  HeightMap out = map;
  out.preevaluated = true;
  for (int j = 0; j < map.ny; ++j) {
    for (int i = 0; i < map.nx; ++i) {
      double h = map.at(i, j);
      for (int dj = -radius; dj <= radius; ++dj) {
        const int jj = std::clamp(j + dj, 0, map.ny - 1);
        for (int di = -radius; di <= radius; ++di) {
          const int ii = std::clamp(i + di, 0, map.nx - 1);
          h = std::max(h, map.at(ii, jj));
        }
      }
      out.at(i, j) = h;
    }
  }
  return out;
}

bool state_valid(const HeightMap& map, const Vec3& pos, const BoundingBox& bbox) {
  const double half = bbox.side / 2.0;
  // The whole footprint must lie inside the extent; outside is obstacle space.
  if (pos.x - half < map.origin_x || pos.x + half > map.max_x() || pos.y - half < map.origin_y ||
      pos.y + half > map.max_y()) {
    return false;
  }
  const double bottom = pos.z - half;
  if (map.preevaluated) {
    const int i = map.cell_index_x(pos.x);
    const int j = map.cell_index_y(pos.y);
    return bottom >= map.at(i, j) + map.safety_margin;
  }
  const int i0 = map.cell_index_x(pos.x - half);
  const int i1 = map.cell_index_x(pos.x + half);
  const int j0 = map.cell_index_y(pos.y - half);
  const int j1 = map.cell_index_y(pos.y + half);
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      if (bottom < map.at(i, j) + map.safety_margin) return false;
    }
  }
  return true;
}

}  // namespace windplan
