#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace stls {

// Coordinates live in R^{d+1} with the time coordinate first; for d = 1 only
// the leading two entries are used.  Spatial-only points use entries 0..d-1.
using Point = std::array<double, 3>;

// Simplex with tagged refinement edge: v[0]-v[1] is the edge bisected next.
// `type` and `gen` drive the bisection rule for tetrahedra.
struct Element {
  std::array<int, 4> v{-1, -1, -1, -1};
  std::uint8_t type = 0;
  std::int32_t gen = 0;
};

struct Facet {
  std::array<int, 3> v{-1, -1, -1};  // d+1 vertex ids, sorted ascending
  int element = -1;                  // adjacent element
};

// Conforming simplicial partition of the spatial domain.  Element vertex
// tuples are kept sorted ascending so that tensor-product slabs of adjacent
// elements are split compatibly.
struct SpatialMesh {
  int d = 1;  // 1 or 2
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> elements;  // d+1 entries used

  void normalize();  // sort each element tuple
  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_elements() const { return static_cast<int>(elements.size()); }
};

struct TimePartition {
  std::vector<double> nodes;  // increasing, nodes.front() = 0

  int n_slabs() const { return static_cast<int>(nodes.size()) - 1; }
  static TimePartition uniform(double t_end, int n_slabs);
};

enum class FacetClass { initial, terminal, lateral };

// Measure and barycentric gradients of a spatial element.
struct SpatialGeometry {
  double measure = 0.0;
  std::array<std::array<double, 2>, 3> grad{};
};

SpatialGeometry spatial_element_geometry(const SpatialMesh& sm, int e);

// 1 for vertices on the domain boundary (facets adjacent to one element).
std::vector<char> spatial_boundary_vertices(const SpatialMesh& sm);

struct SpaceTimeMesh {
  int dim = 2;  // d+1
  std::vector<Point> vertices;
  std::vector<Element> elements;
  // For vertices created by edge bisection, the ids of the edge endpoints;
  // original vertices store {-1,-1}.  Parents always precede children.
  std::vector<std::array<int, 2>> vertex_parents;

  // Filled by classify_boundary():
  std::vector<Facet> initial_facets;
  std::vector<Facet> terminal_facets;
  std::vector<Facet> lateral_facets;
  std::vector<char> vertex_lateral;  // 1 if the vertex lies on a lateral facet
  double t_begin = 0.0;
  double t_end = 1.0;

  double reference_volume = 0.0;  // volume at construction, conserved by bisection

  int d() const { return dim - 1; }
  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_elements() const { return static_cast<int>(elements.size()); }

  void classify_boundary();
  double total_volume() const;
};

// Volume of element k (absolute value; degenerate elements report 0).
double element_volume(const SpaceTimeMesh& m, int k);

// Barycentric gradients and measure of one element.
struct ElementGeometry {
  double volume = 0.0;
  // grad[i] = gradient of the barycentric coordinate of local vertex i,
  // in (t, x) coordinates.
  std::array<std::array<double, 3>, 4> grad{};
};

ElementGeometry element_geometry(const SpaceTimeMesh& m, int k);

// Physical coordinates of a barycentric point of element k.
Point element_point(const SpaceTimeMesh& m, int k, const double* bary);

// inradius / diameter of element k.
double element_quality(const SpaceTimeMesh& m, int k);

double facet_measure(const SpaceTimeMesh& m, const Facet& f);

// Splits the prism (bottom simplex, its copy at the next time level) into
// d+1 simplices along the path diagonals.  `bottom` and `top` hold d+1
// vertex ids each, listed in ascending spatial order on both levels.
// Element ell of the result is the hull of bottom[ell..d] and top[0..ell].
// Tags: tetrahedra take the vertical edge bottom[ell]-top[ell] with type 0;
// triangles take their longest edge (the cell diagonal).
std::vector<Element> split_prism(const SpaceTimeMesh& m,
                                 const std::array<int, 3>& bottom,
                                 const std::array<int, 3>& top, int d);

// Tensor-product space-time mesh: one prism layer per time slab, each prism
// split into simplices.  Vertex (k, i) of the result has id
// k * sm.n_vertices() + i.
SpaceTimeMesh build_tensor_product_mesh(const TimePartition& tp, const SpatialMesh& sm);

// Bisects every marked element d+1 times (halving diameters, producing
// 2^{d+1} descendants) and recursively bisects further elements until the
// mesh is conforming again.  Throws if closure exceeds 100 * n_elements
// element creations.
SpaceTimeMesh bisect(const SpaceTimeMesh& m, const std::vector<int>& marked);

struct AdmissibilityReport {
  bool pass = true;
  std::vector<std::array<int, 3>> offending_facets;
  std::string message;
};

enum class CheckLevel { fast, full };

// fast: facet incidence counts, positive volumes, volume conservation.
// full: additionally scans boundary facets for hanging vertices.
AdmissibilityReport check_admissibility(const SpaceTimeMesh& m,
                                        CheckLevel level = CheckLevel::full);

// Writes "d+1 n_vertices n_elements", vertex coordinates (time first),
// element vertex ids, then facet class lines.  `element_extra` appends one
// value per element line when given.
void dump_mesh(std::ostream& os, const SpaceTimeMesh& m,
               const std::vector<double>* element_extra = nullptr);

// Helper factories used by the experiments and the test suites.
SpatialMesh make_interval_mesh(int n_cells, double a = 0.0, double b = 1.0);
SpatialMesh make_interval_mesh(const std::vector<double>& nodes);
// Rectangle split into nx * ny cells, each cell split along its
// top-left/bottom-right diagonal.
SpatialMesh make_rect_mesh(int nx, int ny, double x0, double y0, double x1, double y1);

// Unit space-time square J x Omega = (0,1) x (0,1) split into four triangles
// around the midpoint, refinement edges on the outer square.
SpaceTimeMesh make_square_cross_mesh();

}  // namespace stls
