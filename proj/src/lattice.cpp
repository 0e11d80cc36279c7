#include "symdyn/lattice.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

constexpr std::array<std::pair<Embedding, std::string_view>, 6> kEmbeddingNames{{
    {Embedding::none, "none"},
    {Embedding::sphere, "sphere"},
    {Embedding::torus, "torus"},
    {Embedding::klein, "klein"},
    {Embedding::circle, "circle"},
    {Embedding::plane, "plane"},
}};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Returns a description of the first invariant violation, or empty.
std::string check_adjacency(const std::vector<std::vector<int>>& adj, int* bad_vertex) {
  const int n = static_cast<int>(adj.size());
  if (n == 0) return "lattice has no vertices";
  const std::size_t k = adj[0].size();
  for (int i = 0; i < n; ++i) {
    *bad_vertex = i;
    const auto& row = adj[i];
    if (row.size() != k)
      return "vertex " + std::to_string(i) + " has " + std::to_string(row.size()) +
             " neighbors, expected " + std::to_string(k);
    for (std::size_t a = 0; a < row.size(); ++a) {
      const int j = row[a];
      if (j < 0 || j >= n) return "neighbor " + std::to_string(j) + " out of range";
      if (j == i) return "loop at vertex " + std::to_string(i);
      if (a > 0 && row[a - 1] == j)
        return "repeated neighbor " + std::to_string(j) + " of vertex " + std::to_string(i);
    }
  }
  for (int i = 0; i < n; ++i) {
    *bad_vertex = i;
    for (const int j : adj[i]) {
      if (!std::binary_search(adj[j].begin(), adj[j].end(), i))
        return "asymmetric adjacency: " + std::to_string(i) + " lists " + std::to_string(j) +
               " but " + std::to_string(j) + " does not list " + std::to_string(i);
    }
  }
  *bad_vertex = -1;
  return {};
}

void sort_rows(std::vector<std::vector<int>>& adj) {
  for (auto& row : adj) std::sort(row.begin(), row.end());
}

// Accumulates undirected edges and turns them into an adjacency list;
// repeated edges and loops are rejected so that degenerate parameters fail
// instead of silently producing a multigraph.
class EdgeBuilder {
 public:
  explicit EdgeBuilder(int n) : adj_(n) {}

  void add(int u, int v) {
    if (u == v) throw Error("construction produces a loop at vertex " + std::to_string(u));
    if (!edges_.insert({std::min(u, v), std::max(u, v)}).second)
      throw Error("construction produces a repeated edge " + std::to_string(u) + "-" +
                  std::to_string(v));
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }

  Lattice build(std::string name, Embedding embedding) && {
    return Lattice(std::move(name), std::move(adj_), embedding);
  }

 private:
  std::vector<std::vector<int>> adj_;
  std::set<std::pair<int, int>> edges_;
};

// Rectangular grid of `cols` x `rows` vertices, vertex = y * cols + x. The
// horizontal seam is identified directly; the vertical seam either directly
// (torus) or with x -> -x (Klein bottle).
class Grid {
 public:
  Grid(int cols, int rows, Closure closure) : cols_(cols), rows_(rows), closure_(closure) {}

  int vertex(int x, int y) const {
    while (y >= rows_) {
      y -= rows_;
      if (closure_ == Closure::klein) x = -x;
    }
    while (y < 0) {
      y += rows_;
      if (closure_ == Closure::klein) x = -x;
    }
    x %= cols_;
    if (x < 0) x += cols_;
    return y * cols_ + x;
  }

 private:
  int cols_, rows_;
  Closure closure_;
};

std::string closure_name(Closure c) { return c == Closure::torus ? "torus" : "klein"; }

Embedding closure_embedding(Closure c) {
  return c == Closure::torus ? Embedding::torus : Embedding::klein;
}

std::string describe_regularity_failure(const std::string& family, const Error& e) {
  return family + ": invalid parameters (" + e.what() + ")";
}

std::vector<std::vector<int>> icosahedron_adjacency() {
  // Vertex 0 on top, rings 1..5 and 6..10, vertex 11 at the bottom.
  std::vector<std::vector<int>> adj(12);
  auto link = [&](int u, int v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  };
  for (int j = 0; j < 5; ++j) {
    const int up = 1 + j, up_next = 1 + (j + 1) % 5;
    const int lo = 6 + j, lo_next = 6 + (j + 1) % 5;
    link(0, up);
    link(up, up_next);
    link(up, lo);
    link(up, lo_next);
    link(lo, lo_next);
    link(lo, 11);
  }
  sort_rows(adj);
  return adj;
}

}  // namespace

std::string_view embedding_name(Embedding e) {
  for (const auto& [value, name] : kEmbeddingNames)
    if (value == e) return name;
  return "none";
}

Embedding parse_embedding(std::string_view name) {
  for (const auto& [value, text] : kEmbeddingNames)
    if (text == name) return value;
  throw Error("unknown embedding tag '" + std::string(name) + "'");
}

Lattice::Lattice(std::string name, std::vector<std::vector<int>> adjacency, Embedding embedding)
    : name_(std::move(name)), adjacency_(std::move(adjacency)), embedding_(embedding) {
  sort_rows(adjacency_);
  int bad = -1;
  if (auto problem = check_adjacency(adjacency_, &bad); !problem.empty())
    throw Error("invalid lattice '" + name_ + "': " + problem);
  valency_ = static_cast<int>(adjacency_[0].size());
  if (valency_ == 0) throw Error("invalid lattice '" + name_ + "': valency must be positive");
}

bool Lattice::adjacent(int u, int v) const {
  const auto& row = adjacency_[u];
  return std::binary_search(row.begin(), row.end(), v);
}

Lattice tetrahedron() {
  std::vector<std::vector<int>> adj(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) adj[i].push_back(j);
  return Lattice("tetrahedron", std::move(adj), Embedding::sphere);
}

Lattice hexahedron() {
  // Faces 0-1-2-3 and 4-5-6-7, labelled along a Hamiltonian snake: the
  // 8-cycle 0..7 plus the chords {0,3}, {1,6}, {2,5}, {4,7}.
  EdgeBuilder b(8);
  for (int i = 0; i < 8; ++i) b.add(i, (i + 1) % 8);
  b.add(0, 3);
  b.add(1, 6);
  b.add(2, 5);
  b.add(4, 7);
  return std::move(b).build("hexahedron", Embedding::sphere);
}

Lattice icosahedron() {
  return Lattice("icosahedron", icosahedron_adjacency(), Embedding::sphere);
}

Lattice dodecahedron() {
  // Dual of the icosahedron: one vertex per triangular face (faces in
  // lexicographic order), adjacent when the faces share an edge.
  const auto ico = icosahedron_adjacency();
  auto adjacent = [&](int u, int v) {
    return std::binary_search(ico[u].begin(), ico[u].end(), v);
  };
  std::vector<std::array<int, 3>> faces;
  for (int a = 0; a < 12; ++a)
    for (int b = a + 1; b < 12; ++b)
      for (int c = b + 1; c < 12; ++c)
        if (adjacent(a, b) && adjacent(b, c) && adjacent(a, c)) faces.push_back({a, b, c});
  const int n = static_cast<int>(faces.size());
  EdgeBuilder builder(n);
  for (int f = 0; f < n; ++f)
    for (int g = f + 1; g < n; ++g) {
      int shared = 0;
      for (int x : faces[f])
        for (int y : faces[g]) shared += (x == y);
      if (shared == 2) builder.add(f, g);
    }
  return std::move(builder).build("dodecahedron", Embedding::sphere);
}

Lattice buckyball() {
  // Truncated icosahedron: one vertex per directed icosahedron edge (u,v),
  // sitting on edge uv next to u. It is joined to (v,u) across the edge and
  // to the two (u,w) with w adjacent to both u and v (the pentagon at u).
  const auto ico = icosahedron_adjacency();
  std::map<std::pair<int, int>, int> id;
  for (int u = 0; u < 12; ++u)
    for (int v : ico[u]) id.emplace(std::pair{u, v}, static_cast<int>(id.size()));
  EdgeBuilder builder(static_cast<int>(id.size()));
  for (const auto& [uv, i] : id) {
    const auto [u, v] = uv;
    if (u < v) builder.add(i, id.at({v, u}));
    for (int w : ico[u]) {
      if (w == v || !std::binary_search(ico[v].begin(), ico[v].end(), w)) continue;
      const int j = id.at({u, w});
      if (i < j) builder.add(i, j);
    }
  }
  return std::move(builder).build("buckyball", Embedding::sphere);
}

Lattice circle(int n) {
  if (n < 3) throw Error("circle: need n >= 3, got " + std::to_string(n));
  EdgeBuilder b(n);
  for (int i = 0; i < n; ++i) b.add(i, (i + 1) % n);
  return std::move(b).build("circle(" + std::to_string(n) + ")", Embedding::circle);
}

Lattice square(int side, Neighborhood neighborhood, Closure closure) {
  if (side < 3) throw Error("square: need side >= 3, got " + std::to_string(side));
  const std::string name = "square(" + std::to_string(side) + "," +
                           (neighborhood == Neighborhood::moore ? "moore" : "vonneumann") + "," +
                           closure_name(closure) + ")";
  const Grid grid(side, side, closure);
  EdgeBuilder b(side * side);
  try {
    for (int y = 0; y < side; ++y)
      for (int x = 0; x < side; ++x) {
        const int v = grid.vertex(x, y);
        b.add(v, grid.vertex(x + 1, y));
        b.add(v, grid.vertex(x, y + 1));
        if (neighborhood == Neighborhood::moore) {
          b.add(v, grid.vertex(x + 1, y + 1));
          b.add(v, grid.vertex(x - 1, y + 1));
        }
      }
    return std::move(b).build(name, closure_embedding(closure));
  } catch (const Error& e) {
    throw Error(describe_regularity_failure(name, e));
  }
}

Lattice graphene(int width, int height, Closure closure) {
  const std::string name = "graphene(" + std::to_string(width) + "," + std::to_string(height) +
                           "," + closure_name(closure) + ")";
  if (width < 4 || height < 2 || width % 2 != 0 || height % 2 != 0)
    throw Error(name + ": width must be even and >= 4, height even and >= 2");
  const Grid grid(width, height, closure);
  EdgeBuilder b(width * height);
  try {
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) {
        const int v = grid.vertex(x, y);
        b.add(v, grid.vertex(x + 1, y));
        if ((x + y) % 2 == 0) b.add(v, grid.vertex(x, y + 1));
      }
    return std::move(b).build(name, closure_embedding(closure));
  } catch (const Error& e) {
    throw Error(describe_regularity_failure(name, e));
  }
}

Lattice triangular(int strips, int strip_length, Closure closure) {
  const std::string name = "triangular(" + std::to_string(strips) + "," +
                           std::to_string(strip_length) + "," + closure_name(closure) + ")";
  if (strips < 2 || strip_length < 6 || strip_length % 2 != 0)
    throw Error(name + ": need strips >= 2 and an even strip length >= 6");
  // Each zigzag strip is a pair of offset rows; even rows connect up-left,
  // odd rows up-right.
  const int cols = strip_length / 2;
  const int rows = 2 * strips;
  const Grid grid(cols, rows, closure);
  EdgeBuilder b(cols * rows);
  try {
    for (int y = 0; y < rows; ++y)
      for (int x = 0; x < cols; ++x) {
        const int v = grid.vertex(x, y);
        b.add(v, grid.vertex(x + 1, y));
        b.add(v, grid.vertex(x, y + 1));
        b.add(v, grid.vertex(y % 2 == 0 ? x - 1 : x + 1, y + 1));
      }
    return std::move(b).build(name, closure_embedding(closure));
  } catch (const Error& e) {
    throw Error(describe_regularity_failure(name, e));
  }
}

namespace {

int parse_int_param(std::string_view text, std::string_view spec) {
  text = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error("bad integer parameter '" + std::string(text) + "' in lattice spec '" +
                std::string(spec) + "'");
  return value;
}

Closure parse_closure(std::string_view text) {
  text = trim(text);
  if (text == "torus") return Closure::torus;
  if (text == "klein") return Closure::klein;
  throw Error("unknown closure '" + std::string(text) + "' (expected torus or klein)");
}

Neighborhood parse_neighborhood(std::string_view text) {
  text = trim(text);
  if (text == "vonneumann" || text == "von_neumann") return Neighborhood::von_neumann;
  if (text == "moore") return Neighborhood::moore;
  throw Error("unknown neighborhood '" + std::string(text) + "' (expected vonneumann or moore)");
}

}  // namespace

Lattice make_named(std::string_view spec) {
  spec = trim(spec);
  std::string_view family = spec;
  std::vector<std::string_view> params;
  if (const auto open = spec.find('('); open != std::string_view::npos) {
    if (spec.back() != ')') throw Error("unbalanced parentheses in lattice spec '" + std::string(spec) + "'");
    family = trim(spec.substr(0, open));
    std::string_view rest = spec.substr(open + 1, spec.size() - open - 2);
    while (true) {
      const auto comma = rest.find(',');
      params.push_back(trim(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (params.size() == 1 && params[0].empty()) params.clear();
  }

  auto expect_params = [&](std::size_t lo, std::size_t hi) {
    if (params.size() < lo || params.size() > hi)
      throw Error("lattice '" + std::string(family) + "' takes " + std::to_string(lo) +
                  (lo == hi ? "" : ".." + std::to_string(hi)) + " parameters, got " +
                  std::to_string(params.size()));
  };

  if (family == "tetrahedron") return expect_params(0, 0), tetrahedron();
  if (family == "hexahedron" || family == "cube") return expect_params(0, 0), hexahedron();
  if (family == "icosahedron") return expect_params(0, 0), icosahedron();
  if (family == "dodecahedron") return expect_params(0, 0), dodecahedron();
  if (family == "buckyball") return expect_params(0, 0), buckyball();
  if (family == "circle") {
    expect_params(1, 1);
    return circle(parse_int_param(params[0], spec));
  }
  if (family == "square") {
    expect_params(1, 3);
    const int side = parse_int_param(params[0], spec);
    const auto nb = params.size() > 1 ? parse_neighborhood(params[1]) : Neighborhood::von_neumann;
    const auto cl = params.size() > 2 ? parse_closure(params[2]) : Closure::torus;
    return square(side, nb, cl);
  }
  if (family == "graphene" || family == "triangular") {
    expect_params(2, 3);
    const int a = parse_int_param(params[0], spec);
    const int b = parse_int_param(params[1], spec);
    const auto cl = params.size() > 2 ? parse_closure(params[2]) : Closure::torus;
    return family == "graphene" ? graphene(a, b, cl) : triangular(a, b, cl);
  }
  throw Error("unknown lattice name '" + std::string(family) + "'");
}

Lattice parse_lattice(std::string_view text) {
  std::string name = "unnamed";
  Embedding embedding = Embedding::none;
  int n = -1, k = -1;
  std::vector<std::vector<int>> adj;
  std::vector<std::size_t> row_line;
  std::vector<bool> seen;

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      const std::string_view comment = trim(line.substr(hash + 1));
      if (comment.starts_with("name:")) name = std::string(trim(comment.substr(5)));
      else if (comment.starts_with("embedding:")) {
        try {
          embedding = parse_embedding(trim(comment.substr(10)));
        } catch (const Error& e) {
          throw ParseError(line_no, e.what());
        }
      }
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    std::istringstream in{std::string(line)};
    if (n < 0) {
      if (!(in >> n >> k) || n <= 0 || k <= 0)
        throw ParseError(line_no, "expected header 'n k' with positive integers");
      std::string extra;
      if (in >> extra) throw ParseError(line_no, "trailing text after header");
      adj.assign(n, {});
      row_line.assign(n, 0);
      seen.assign(n, false);
      continue;
    }

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'i: j1 ... jk'");
    int i = 0;
    const auto head = trim(line.substr(0, colon));
    const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), i);
    if (ec != std::errc() || ptr != head.data() + head.size())
      throw ParseError(line_no, "bad vertex id '" + std::string(head) + "'");
    if (i < 0 || i >= n) throw ParseError(line_no, "vertex id " + std::to_string(i) + " out of range");
    if (seen[i]) throw ParseError(line_no, "vertex " + std::to_string(i) + " listed twice");
    seen[i] = true;
    row_line[i] = line_no;

    std::istringstream rest{std::string(line.substr(colon + 1))};
    std::string token;
    while (rest >> token) {
      int j = 0;
      const auto [p, e] = std::from_chars(token.data(), token.data() + token.size(), j);
      if (e != std::errc() || p != token.data() + token.size())
        throw ParseError(line_no, "bad neighbor '" + token + "'");
      if (j < 0 || j >= n) throw ParseError(line_no, "neighbor " + token + " out of range");
      adj[i].push_back(j);
    }
    if (static_cast<int>(adj[i].size()) != k)
      throw ParseError(line_no, "irregular valency: vertex " + std::to_string(i) + " has " +
                                    std::to_string(adj[i].size()) + " neighbors, expected " +
                                    std::to_string(k));
  }
  if (n < 0) throw ParseError(0, "missing header line");
  for (int i = 0; i < n; ++i)
    if (!seen[i]) throw ParseError(0, "vertex " + std::to_string(i) + " has no adjacency line");

  sort_rows(adj);
  int bad = -1;
  if (auto problem = check_adjacency(adj, &bad); !problem.empty())
    throw ParseError(bad >= 0 ? row_line[bad] : 0, problem);
  return Lattice(std::move(name), std::move(adj), embedding);
}

std::string serialize(const Lattice& lattice) {
  std::ostringstream out;
  out << "# name: " << lattice.name() << "\n";
  if (lattice.embedding() != Embedding::none)
    out << "# embedding: " << embedding_name(lattice.embedding()) << "\n";
  out << lattice.size() << " " << lattice.valency() << "\n";
  for (int i = 0; i < lattice.size(); ++i) {
    out << i << ":";
    for (int j : lattice.neighbors(i)) out << " " << j;
    out << "\n";
  }
  return out.str();
}

}  // namespace symdyn
