#include "gmlab/shape.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>

namespace gmlab {

ShapeParseError::ShapeParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

int Shape::index_of(const std::string& v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    return (it != vertices.end() && *it == v) ? static_cast<int>(it - vertices.begin()) : -1;
}

std::vector<int> Shape::degrees() const {
    std::vector<int> d(vertices.size(), 0);
    for (auto [a, b] : edges) {
        ++d[a];
        ++d[b];
    }
    return d;
}

std::vector<int> Shape::u_and_v() const {
    std::vector<int> out;
    for (int u : U)
        if (std::find(V.begin(), V.end(), u) != V.end()) out.push_back(u);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct Token {
    enum Kind { Ident, Punct, End } kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        skip();
        Token t{Token::End, "", line_, col_};
        if (i_ >= s_.size()) return t;
        const char c = s_[i_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Token::Ident;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) t.text += take();
            return t;
        }
        if (std::string("{}:;,()[]").find(c) != std::string::npos) {
            t.kind = Token::Punct;
            t.text = std::string(1, take());
            return t;
        }
        throw ShapeParseError(line_, col_, std::string("unexpected character '") + c + "'");
    }

private:
    char take() {
        const char c = s_[i_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    void skip() {
        while (i_ < s_.size()) {
            if (s_[i_] == '#') {
                while (i_ < s_.size() && s_[i_] != '\n') take();
            } else if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
                take();
            } else {
                break;
            }
        }
    }
    const std::string& s_;
    size_t i_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) { advance(); }

    Shape parse() {
        keyword("shape");
        raw_.name = ident("shape name").text;
        punct("{");
        section("vertices");
        if (!is_punct(";")) {
            add_vertex(ident("vertex name"));
            while (is_punct(",")) {
                advance();
                add_vertex(ident("vertex name"));
            }
        }
        punct(";");
        section("edges");
        if (!is_punct(";")) {
            edge();
            while (is_punct(",")) {
                advance();
                edge();
            }
        }
        punct(";");
        section("U");
        tuple(u_);
        punct(";");
        section("V");
        tuple(v_);
        punct(";");
        punct("}");
        if (cur_.kind != Token::End) fail(cur_, "unexpected text after the closing brace");
        return finish();
    }

private:
    struct Named {
        std::string name;
        int line, col;
    };

    [[noreturn]] void fail(const Token& t, const std::string& msg) { throw ShapeParseError(t.line, t.col, msg); }
    void advance() { cur_ = lex_.next(); }
    bool is_punct(const char* p) const { return cur_.kind == Token::Punct && cur_.text == p; }
    std::string describe(const Token& t) const { return t.kind == Token::End ? "end of input" : "'" + t.text + "'"; }

    void punct(const char* p) {
        if (!is_punct(p)) fail(cur_, std::string("expected '") + p + "' but found " + describe(cur_));
        advance();
    }
    void keyword(const char* k) {
        if (cur_.kind != Token::Ident || cur_.text != k)
            fail(cur_, std::string("expected '") + k + "' but found " + describe(cur_));
        advance();
    }
    void section(const char* k) {
        keyword(k);
        punct(":");
    }
    Token ident(const char* what) {
        if (cur_.kind != Token::Ident) fail(cur_, std::string("expected ") + what + " but found " + describe(cur_));
        Token t = cur_;
        advance();
        return t;
    }
    void add_vertex(const Token& t) {
        if (!declared_.insert(t.text).second) fail(t, "duplicate vertex '" + t.text + "'");
    }
    void require_vertex(const Token& t) {
        if (!declared_.count(t.text)) fail(t, "unknown vertex '" + t.text + "'");
    }
    void edge() {
        const Token open = cur_;
        punct("(");
        const Token a = ident("vertex name");
        punct(",");
        const Token b = ident("vertex name");
        punct(")");
        require_vertex(a);
        require_vertex(b);
        if (a.text == b.text) fail(a, "self-loop on '" + a.text + "'");
        auto key = std::minmax(a.text, b.text);
        if (!edge_set_.insert({key.first, key.second}).second)
            fail(open, "duplicate edge (" + a.text + "," + b.text + ")");
    }
    void tuple(std::vector<std::string>& out) {
        punct("[");
        std::set<std::string> seen;
        auto one = [&] {
            const Token t = ident("vertex name");
            require_vertex(t);
            if (!seen.insert(t.text).second) fail(t, "duplicate tuple entry '" + t.text + "'");
            out.push_back(t.text);
        };
        if (!is_punct("]")) {
            one();
            while (is_punct(",")) {
                advance();
                one();
            }
        }
        punct("]");
    }
    Shape finish() {
        Shape s;
        s.name = raw_.name;
        s.vertices.assign(declared_.begin(), declared_.end());
        for (auto& [a, b] : edge_set_) s.edges.emplace_back(s.index_of(a), s.index_of(b));
        std::sort(s.edges.begin(), s.edges.end());
        for (auto& u : u_) s.U.push_back(s.index_of(u));
        for (auto& v : v_) s.V.push_back(s.index_of(v));
        return s;
    }

    Lexer lex_;
    Token cur_{Token::End, "", 1, 1};
    Shape raw_;
    std::set<std::string> declared_;
    std::set<std::pair<std::string, std::string>> edge_set_;
    std::vector<std::string> u_, v_;
};

Shape make_shape(std::string name, std::vector<std::string> verts, std::vector<std::pair<std::string, std::string>> edges,
                 std::vector<std::string> U, std::vector<std::string> V) {
    Shape s;
    s.name = std::move(name);
    s.vertices = std::move(verts);
    std::sort(s.vertices.begin(), s.vertices.end());
    for (auto& [a, b] : edges) {
        const int ia = s.index_of(a), ib = s.index_of(b);
        const int x = std::min(ia, ib), y = std::max(ia, ib);
        s.edges.emplace_back(x, y);
    }
    std::sort(s.edges.begin(), s.edges.end());
    for (auto& u : U) s.U.push_back(s.index_of(u));
    for (auto& v : V) s.V.push_back(s.index_of(v));
    return s;
}

bool in_set(const std::vector<int>& set, int v) { return std::find(set.begin(), set.end(), v) != set.end(); }

}  // namespace

Shape parse_shape(const std::string& text) { return Parser(text).parse(); }

std::string print_shape(const Shape& s) {
    auto join_tuple = [&](const std::vector<int>& t) {
        std::string out = "[";
        for (size_t i = 0; i < t.size(); ++i) out += (i ? ", " : "") + s.vertices[t[i]];
        return out + "]";
    };
    std::string out = "shape " + s.name + " {\n  vertices: ";
    for (size_t i = 0; i < s.vertices.size(); ++i) out += (i ? ", " : "") + s.vertices[i];
    out += ";\n  edges:";
    if (s.edges.empty()) out += " ";
    for (size_t i = 0; i < s.edges.size(); ++i)
        out += (i ? ", (" : " (") + s.vertices[s.edges[i].first] + "," + s.vertices[s.edges[i].second] + ")";
    out += ";\n  U: " + join_tuple(s.U) + ";\n  V: " + join_tuple(s.V) + ";\n}\n";
    return out;
}

Shape adjacency_shape() { return make_shape("adjacency", {"u", "v"}, {{"u", "v"}}, {"u"}, {"v"}); }
Shape single_edge_shape() { return make_shape("single_edge", {"u", "v"}, {{"u", "v"}}, {"u"}, {"v"}); }
Shape triangle_shape() {
    return make_shape("triangle", {"u1", "v1", "v2"}, {{"u1", "v1"}, {"v1", "v2"}, {"v2", "u1"}}, {"u1"}, {"v1", "v2"});
}
Shape two_path_shape() {
    return make_shape("two_path", {"u1", "u2", "v1", "w1"}, {{"u1", "w1"}, {"u2", "w1"}, {"w1", "v1"}}, {"u1", "u2"},
                      {"v1"});
}

namespace {

// Vertices reachable from U once `set` is removed; -1 if some V vertex is reached.
int u_side_size(const Shape& s, const std::vector<int>& set) {
    const int m = s.n_vertices();
    std::vector<char> removed(m, 0), seen(m, 0), target(m, 0);
    for (int v : set) removed[v] = 1;
    for (int v : s.V) target[v] = 1;
    std::vector<std::vector<int>> adj(m);
    for (auto [a, b] : s.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::queue<int> q;
    for (int u : s.U)
        if (!removed[u] && !seen[u]) {
            seen[u] = 1;
            q.push(u);
        }
    int reached = 0;
    while (!q.empty()) {
        const int x = q.front();
        q.pop();
        if (target[x]) return -1;
        ++reached;
        for (int y : adj[x])
            if (!removed[y] && !seen[y]) {
                seen[y] = 1;
                q.push(y);
            }
    }
    return reached;
}

}  // namespace

bool is_vertex_separator(const Shape& s, const std::vector<int>& set) { return u_side_size(s, set) >= 0; }

int edges_within(const Shape& s, const std::vector<int>& set) {
    int c = 0;
    for (auto [a, b] : s.edges) c += in_set(set, a) && in_set(set, b);
    return c;
}

std::vector<int> isolated_middle_vertices(const Shape& s) {
    const auto deg = s.degrees();
    std::vector<int> out;
    for (int v = 0; v < s.n_vertices(); ++v)
        if (deg[v] == 0 && !in_set(s.U, v) && !in_set(s.V, v)) out.push_back(v);
    return out;
}

namespace {

void check_exhaustive_size(const Shape& s) {
    if (s.n_vertices() > kExhaustiveVertexCap)
        throw std::invalid_argument("exhaustive separator search is limited to " + std::to_string(kExhaustiveVertexCap) +
                                    " vertices");
}

// Visits subsets in order of size, and lexicographically (by index) within a size.
template <class Fn>
void for_each_subset_by_size(int m, Fn&& fn) {
    std::vector<int> idx;
    for (int k = 0; k <= m; ++k) {
        idx.resize(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        for (;;) {
            if (!fn(static_cast<const std::vector<int>&>(idx))) return;
            int i = k - 1;
            while (i >= 0 && idx[i] == m - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
}

}  // namespace

SeparatorResult min_vertex_separator(const Shape& s) {
    check_exhaustive_size(s);
    // Ties on size go to the separator closest to U, then lexicographic order.
    SeparatorResult r;
    int best_side = -1;
    for_each_subset_by_size(s.n_vertices(), [&](const std::vector<int>& set) {
        if (best_side >= 0 && set.size() > r.set.size()) return false;
        const int side = u_side_size(s, set);
        if (side < 0) return true;
        if (best_side < 0 || side < best_side) {
            r.set = set;
            best_side = side;
        }
        return true;
    });
    r.size = static_cast<int>(r.set.size());
    r.edges_inside = edges_within(s, r.set);
    return r;
}

SeparatorResult min_cut_separator(const Shape& s) {
    // Node 2v is v_in, 2v+1 is v_out; source 2m, sink 2m+1.
    const int m = s.n_vertices();
    const int src = 2 * m, snk = 2 * m + 1, N = 2 * m + 2;
    constexpr int INF = std::numeric_limits<int>::max() / 4;
    const std::vector<int> forced = s.u_and_v();
    std::vector<std::vector<int>> cap(N, std::vector<int>(N, 0));
    for (int v = 0; v < m; ++v) cap[2 * v][2 * v + 1] = in_set(forced, v) ? 0 : 1;
    for (auto [a, b] : s.edges) {
        cap[2 * a + 1][2 * b] = INF;
        cap[2 * b + 1][2 * a] = INF;
    }
    for (int u : s.U)
        if (!in_set(forced, u)) cap[src][2 * u] = INF;
    for (int v : s.V)
        if (!in_set(forced, v)) cap[2 * v + 1][snk] = INF;

    int flow = 0;
    for (;;) {
        std::vector<int> parent(N, -1);
        parent[src] = src;
        std::queue<int> q;
        q.push(src);
        while (!q.empty() && parent[snk] < 0) {
            const int x = q.front();
            q.pop();
            for (int y = 0; y < N; ++y)
                if (parent[y] < 0 && cap[x][y] > 0) {
                    parent[y] = x;
                    q.push(y);
                }
        }
        if (parent[snk] < 0) break;
        int aug = INF;
        for (int y = snk; y != src; y = parent[y]) aug = std::min(aug, cap[parent[y]][y]);
        for (int y = snk; y != src; y = parent[y]) {
            cap[parent[y]][y] -= aug;
            cap[y][parent[y]] += aug;
        }
        flow += aug;
    }
    std::vector<char> reach(N, 0);
    std::queue<int> q;
    q.push(src);
    reach[src] = 1;
    while (!q.empty()) {
        const int x = q.front();
        q.pop();
        for (int y = 0; y < N; ++y)
            if (!reach[y] && cap[x][y] > 0) {
                reach[y] = 1;
                q.push(y);
            }
    }
    SeparatorResult r;
    r.set = forced;
    for (int v = 0; v < m; ++v)
        if (reach[2 * v] && !reach[2 * v + 1] && !in_set(forced, v)) r.set.push_back(v);
    std::sort(r.set.begin(), r.set.end());
    r.size = static_cast<int>(r.set.size());
    if (r.size != static_cast<int>(forced.size()) + flow) throw std::logic_error("min-cut extraction mismatch");
    r.edges_inside = edges_within(s, r.set);
    return r;
}

SeparatorResult weighted_separator(const Shape& s, double n, double p) {
    check_exhaustive_size(s);
    if (!(p > 0.0 && p <= 0.5)) throw std::invalid_argument("weighted separator needs 0 < p <= 1/2");
    const double log_l = std::log((1.0 - p) / p), log_n = std::log(n);
    SeparatorResult best;
    bool have = false;
    for_each_subset_by_size(s.n_vertices(), [&](const std::vector<int>& set) {
        if (!is_vertex_separator(s, set)) return true;
        const int e = edges_within(s, set);
        const double obj = e * log_l - static_cast<double>(set.size()) * log_n;
        const double tol = 1e-12 * std::max(1.0, std::abs(obj));
        bool better = !have || obj > best.objective + tol;
        if (have && !better && std::abs(obj - best.objective) <= tol) {
            if (e != best.edges_inside)
                better = e < best.edges_inside;
            else if (set.size() != best.set.size())
                better = set.size() < best.set.size();
            else
                better = u_side_size(s, set) < u_side_size(s, best.set);
        }
        if (better) {
            best.set = set;
            best.size = static_cast<int>(set.size());
            best.edges_inside = e;
            best.objective = obj;
            have = true;
        }
        return true;
    });
    return best;
}

std::string vertex_set_string(const Shape& s, const std::vector<int>& set) {
    std::string out = "{";
    for (size_t i = 0; i < set.size(); ++i) out += (i ? "," : "") + s.vertices[set[i]];
    return out + "}";
}

}  // namespace gmlab
