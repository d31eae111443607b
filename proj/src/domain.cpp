#include "fraclap/domain.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "fraclap/errors.hpp"

namespace fraclap {

namespace {

std::string point_string(std::span<const int> p) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ']';
  return os.str();
}

}  // namespace

Domain::Domain(int dim, std::vector<Point> vertices) : dim_(dim), vertices_(std::move(vertices)) {
  if (dim_ < 1) throw std::domain_error("Domain: dimension must be >= 1");
  if (vertices_.empty()) throw std::domain_error("Domain: vertex set is empty");
  for (const auto& v : vertices_) {
    if (static_cast<int>(v.size()) != dim_) {
      throw std::domain_error("Domain: vertex " + point_string(v) + " has wrong dimension");
    }
  }
  std::sort(vertices_.begin(), vertices_.end());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index_.emplace(vertices_[i], i).second) {
      throw std::domain_error("Domain: duplicate vertex " + point_string(vertices_[i]));
    }
  }
}

std::optional<std::size_t> Domain::index_of(std::span<const int> p) const {
  if (auto it = index_.find(Point(p.begin(), p.end())); it != index_.end()) return it->second;
  return std::nullopt;
}

bool Domain::is_connected() const {
  std::vector<char> seen(vertices_.size(), 0);
  std::deque<std::size_t> queue{0};
  seen[0] = 1;
  std::size_t visited = 1;
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    Point nb = vertices_[cur];
    for (int i = 0; i < dim_; ++i) {
      for (int step : {-1, 1}) {
        nb[i] += step;
        if (auto j = index_of(nb); j && !seen[*j]) {
          seen[*j] = 1;
          ++visited;
          queue.push_back(*j);
        }
        nb[i] -= step;
      }
    }
  }
  return visited == vertices_.size();
}

std::vector<int> Domain::extent() const {
  std::vector<int> lo(vertices_[0]), hi(vertices_[0]);
  for (const auto& v : vertices_) {
    for (int i = 0; i < dim_; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  }
  for (int i = 0; i < dim_; ++i) hi[i] -= lo[i];
  return hi;
}

int Domain::max_offset() const {
  const auto e = extent();
  return *std::max_element(e.begin(), e.end());
}

int Domain::max_abs_coordinate() const {
  int m = 0;
  for (const auto& v : vertices_) m = std::max(m, linf_norm(v));
  return m;
}

Domain make_box(int dim, std::span<const int> side_lengths) {
  if (dim < 1 || static_cast<int>(side_lengths.size()) != dim) {
    throw std::domain_error("make_box: need one side length per dimension");
  }
  std::size_t count = 1;
  for (int n : side_lengths) {
    if (n < 1) throw std::domain_error("make_box: side lengths must be positive");
    count *= static_cast<std::size_t>(n);
  }
  std::vector<Point> pts;
  pts.reserve(count);
  Point p(static_cast<std::size_t>(dim), 0);
  for (std::size_t c = 0; c < count; ++c) {
    pts.push_back(p);
    for (int i = dim - 1; i >= 0; --i) {
      if (++p[i] < side_lengths[i]) break;
      p[i] = 0;
    }
  }
  return Domain(dim, std::move(pts));
}

Domain make_path(int length) {
  const int sides[] = {length};
  return make_box(1, sides);
}

Domain make_l_shape(int arm) {
  if (arm < 2) throw std::domain_error("make_l_shape: arm must be >= 2");
  std::vector<Point> pts;
  for (int x = 0; x < 2 * arm; ++x) {
    for (int y = 0; y < 2 * arm; ++y) {
      if (x >= arm && y >= arm) continue;
      pts.push_back({x, y});
    }
  }
  return Domain(2, std::move(pts));
}

std::uint64_t splitmix64_draw(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + (k + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Domain make_random_connected(int dim, int size, std::uint64_t seed) {
  if (dim < 1) throw std::domain_error("make_random_connected: dimension must be >= 1");
  if (size < 1) throw std::domain_error("make_random_connected: size must be >= 1");
  std::set<Point> taken;
  std::set<Point> frontier;
  std::uint64_t counter = 0;
  auto add = [&](const Point& p) {
    taken.insert(p);
    frontier.erase(p);
    Point nb = p;
    for (int i = 0; i < dim; ++i) {
      for (int step : {-1, 1}) {
        nb[i] += step;
        if (!taken.count(nb)) frontier.insert(nb);
        nb[i] -= step;
      }
    }
  };
  auto uniform_index = [&](std::uint64_t n) {
    const std::uint64_t limit = (0 - n) % n;
    while (true) {
      const std::uint64_t r = splitmix64_draw(seed, counter++);
      if (r >= limit) return r % n;
    }
  };
  add(Point(static_cast<std::size_t>(dim), 0));
  while (static_cast<int>(taken.size()) < size) {
    auto it = frontier.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(uniform_index(frontier.size())));
    add(Point(*it));
  }
  return Domain(dim, std::vector<Point>(taken.begin(), taken.end()));
}

Domain parse_domain_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("domain file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("domain file: top level must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw ParseError("domain file: missing integer field \"dim\"");
  }
  const int dim = doc["dim"].get<int>();
  if (dim < 1) throw ParseError("domain file: \"dim\" must be >= 1");
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw ParseError("domain file: missing array field \"vertices\"");
  }
  const auto& arr = doc["vertices"];
  if (arr.empty()) throw ParseError("domain file: \"vertices\" is empty");
  std::vector<Point> pts;
  std::set<Point> seen;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& v = arr[i];
    const std::string where = "domain file: vertices[" + std::to_string(i) + "]";
    if (!v.is_array()) throw ParseError(where + " is not an array");
    if (static_cast<int>(v.size()) != dim) {
      throw ParseError(where + " has length " + std::to_string(v.size()) + ", expected " +
                       std::to_string(dim));
    }
    Point p;
    for (const auto& c : v) {
      if (!c.is_number_integer()) throw ParseError(where + " has a non-integer coordinate");
      p.push_back(c.get<int>());
    }
    if (!seen.insert(p).second) throw ParseError(where + " duplicates vertex " + point_string(p));
    pts.push_back(std::move(p));
  }
  return Domain(dim, std::move(pts));
}

std::string domain_to_json(const Domain& domain) {
  nlohmann::json doc;
  doc["dim"] = domain.dim();
  doc["vertices"] = domain.vertices();
  return doc.dump() + "\n";
}

Domain read_domain(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open domain file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_domain_json(buf.str());
}

void write_domain(const Domain& domain, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write domain file " + path.string());
  out << domain_to_json(domain);
}

}  // namespace fraclap
