#include "trisq/simplex.hpp"

#include <sstream>

namespace trisq {

Simplex::Simplex(std::span<const VertexId> verts) {
  if (verts.empty()) throw MalformedSimplexError("empty simplex");
  if (verts.size() > static_cast<std::size_t>(kMaxSimplexVertices))
    throw MalformedSimplexError("simplex has more than " + std::to_string(kMaxSimplexVertices) + " vertices");
  n_ = static_cast<std::uint8_t>(verts.size());
  std::copy(verts.begin(), verts.end(), v_.begin());
  std::sort(v_.begin(), v_.begin() + n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (v_[i] < 0) throw MalformedSimplexError("negative vertex id " + std::to_string(v_[i]));
    if (i > 0 && v_[i] == v_[i - 1])
      throw MalformedSimplexError("vertex " + std::to_string(v_[i]) + " repeated in one simplex");
  }
}

Simplex Simplex::from_sorted(std::span<const VertexId> verts) {
  Simplex s;
  if (verts.empty() || verts.size() > static_cast<std::size_t>(kMaxSimplexVertices))
    throw MalformedSimplexError("bad simplex size " + std::to_string(verts.size()));
  s.n_ = static_cast<std::uint8_t>(verts.size());
  std::copy(verts.begin(), verts.end(), s.v_.begin());
  return s;
}

int Simplex::index_of(VertexId v) const noexcept {
  auto it = std::lower_bound(begin(), end(), v);
  return (it != end() && *it == v) ? static_cast<int>(it - begin()) : -1;
}

Simplex Simplex::without(std::size_t i) const {
  std::array<VertexId, kMaxSimplexVertices> out{};
  std::size_t k = 0;
  for (std::size_t j = 0; j < n_; ++j)
    if (j != i) out[k++] = v_[j];
  return from_sorted({out.data(), k});
}

std::string Simplex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < n_; ++i) os << (i ? "," : "") << v_[i];
  os << ')';
  return os.str();
}

Simplex simplex_union(const Simplex& a, const Simplex& b) {
  std::array<VertexId, 2 * kMaxSimplexVertices> buf{};
  auto end = std::set_union(a.begin(), a.end(), b.begin(), b.end(), buf.begin());
  std::size_t n = static_cast<std::size_t>(end - buf.begin());
  if (n > static_cast<std::size_t>(kMaxSimplexVertices)) throw MalformedSimplexError("simplex union exceeds capacity");
  return Simplex::from_sorted({buf.data(), n});
}

std::vector<Simplex> closed_faces(const Simplex& s) {
  std::vector<Simplex> out;
  const std::size_t n = s.size();
  out.reserve((std::size_t{1} << n) - 1);
  std::array<VertexId, kMaxSimplexVertices> buf{};
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) buf[k++] = s[i];
    out.push_back(Simplex::from_sorted({buf.data(), k}));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Simplex> faces(const Simplex& s) {
  auto out = closed_faces(s);
  out.pop_back();  // s itself sorts last
  return out;
}

}  // namespace trisq
