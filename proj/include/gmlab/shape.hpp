#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gmlab {

// Vertices are stored sorted by name, so vertex index order is name order.
struct Shape {
    std::string name;
    std::vector<std::string> vertices;
    std::vector<std::pair<int, int>> edges;  // (lo, hi) indices, sorted
    std::vector<int> U, V;                   // ordered boundary tuples

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_edges() const { return static_cast<int>(edges.size()); }
    int index_of(const std::string& v) const;  // -1 if absent
    std::vector<int> degrees() const;
    std::vector<int> u_and_v() const;  // U ∩ V as sorted indices
};

class ShapeParseError : public std::runtime_error {
public:
    ShapeParseError(int line, int column, const std::string& message);
    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    int line_, column_;
    std::string message_;
};

Shape parse_shape(const std::string& text);
std::string print_shape(const Shape& s);

// Built-in shapes used by demos and tests.
Shape adjacency_shape();
Shape triangle_shape();
Shape two_path_shape();  // two boundary vertices joined through one middle vertex to a third
Shape single_edge_shape();

struct SeparatorResult {
    std::vector<int> set;  // sorted vertex indices
    int size = 0;
    int edges_inside = 0;
    double objective = 0.0;  // log objective for the weighted search, 0 otherwise
};

bool is_vertex_separator(const Shape& s, const std::vector<int>& set);
int edges_within(const Shape& s, const std::vector<int>& set);
std::vector<int> isolated_middle_vertices(const Shape& s);

inline constexpr int kExhaustiveVertexCap = 24;

SeparatorResult min_vertex_separator(const Shape& s);  // exhaustive, lexicographic tie-break
SeparatorResult min_cut_separator(const Shape& s);     // vertex-split max-flow
// argmax of ((1−p)/p)^{|E(S)|}·n^{−|S|}; objective stored as its natural log.
SeparatorResult weighted_separator(const Shape& s, double n, double p);

std::string vertex_set_string(const Shape& s, const std::vector<int>& set);

}  // namespace gmlab
