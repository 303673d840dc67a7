#include "excmap/perm.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace excmap {

Perm::Perm(std::vector<std::uint8_t> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (std::uint8_t v : img_) {
    if (v >= img_.size() || seen[v]) {
      fail(ErrorKind::InvalidTriple, "not a permutation in one-line notation");
    }
    seen[v] = true;
  }
}

Perm Perm::identity(unsigned n) {
  std::vector<std::uint8_t> img(n);
  std::iota(img.begin(), img.end(), 0);
  return Perm(std::move(img));
}

Perm Perm::cycle_shift(unsigned n, unsigned shift) {
  std::vector<std::uint8_t> img(n);
  for (unsigned i = 0; i < n; ++i) img[i] = static_cast<std::uint8_t>((i + shift) % n);
  return Perm(std::move(img));
}

Perm Perm::mul_map(unsigned n, unsigned m) {
  std::vector<std::uint8_t> img(n);
  for (unsigned i = 0; i < n; ++i) {
    img[i] = static_cast<std::uint8_t>((static_cast<unsigned long long>(m) * i) % n);
  }
  return Perm(std::move(img));
}

bool Perm::is_identity() const {
  for (unsigned i = 0; i < degree(); ++i) {
    if (img_[i] != i) return false;
  }
  return true;
}

unsigned Perm::fixed_points() const {
  unsigned c = 0;
  for (unsigned i = 0; i < degree(); ++i) {
    if (img_[i] == i) ++c;
  }
  return c;
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) fail(ErrorKind::InvalidTriple, "degree mismatch");
  std::vector<std::uint8_t> img(a.degree());
  for (unsigned i = 0; i < a.degree(); ++i) img[i] = a.img_[b.img_[i]];
  Perm out;
  out.img_ = std::move(img);
  return out;
}

Perm Perm::inverse() const {
  std::vector<std::uint8_t> img(degree());
  for (unsigned i = 0; i < degree(); ++i) img[img_[i]] = static_cast<std::uint8_t>(i);
  Perm out;
  out.img_ = std::move(img);
  return out;
}

PermGroup PermGroup::close(unsigned n, std::vector<Perm> gens, std::size_t cap) {
  for (const Perm& g : gens) {
    if (g.degree() != n) fail(ErrorKind::InvalidTriple, "generator degree mismatch");
  }
  std::set<Perm> elems;
  elems.insert(Perm::identity(n));
  std::vector<Perm> work(elems.begin(), elems.end());
  while (!work.empty()) {
    Perm cur = std::move(work.back());
    work.pop_back();
    for (const Perm& g : gens) {
      Perm next = cur * g;
      if (elems.insert(next).second) {
        if (elems.size() > cap) {
          fail(ErrorKind::GroupTooLarge,
               "closure exceeds cap " + std::to_string(cap));
        }
        work.push_back(std::move(next));
      }
    }
  }
  PermGroup G;
  G.n_ = n;
  G.gens_ = std::move(gens);
  G.elements_.assign(elems.begin(), elems.end());
  return G;
}

PermGroup PermGroup::from_elements(unsigned n, std::vector<Perm> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  PermGroup G;
  G.n_ = n;
  G.elements_ = std::move(elements);
  return G;
}

PermGroup PermGroup::trivial(unsigned n) {
  return from_elements(n, {Perm::identity(n)});
}

bool PermGroup::contains(const Perm& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
  for (const Perm& g : elements_) {
    if (!other.contains(g)) return false;
  }
  return true;
}

bool PermGroup::same_elements(const PermGroup& other) const {
  return elements_ == other.elements_;
}

bool PermGroup::is_normal_in(const PermGroup& A) const {
  const auto& conjugators = A.gens_.empty() ? A.elements_ : A.gens_;
  for (const Perm& a : conjugators) {
    Perm ai = a.inverse();
    for (const Perm& g : elements_) {
      if (!contains(a * g * ai)) return false;
    }
  }
  return true;
}

std::vector<unsigned> PermGroup::orbit(unsigned point) const {
  NaturalAction act{n_};
  std::vector<unsigned> id = orbit_ids(*this, act);
  std::vector<unsigned> out;
  for (unsigned v = 0; v < n_; ++v) {
    if (id[v] == id[point]) out.push_back(v);
  }
  return out;
}

bool PermGroup::transitive() const { return orbit(0).size() == n_; }

PermGroup PermGroup::stabilizer(unsigned point) const {
  std::vector<Perm> elems;
  for (const Perm& g : elements_) {
    if (g(point) == point) elems.push_back(g);
  }
  return from_elements(n_, std::move(elems));
}

PermGroup PermGroup::intersection(const PermGroup& other) const {
  std::vector<Perm> elems;
  for (const Perm& g : elements_) {
    if (other.contains(g)) elems.push_back(g);
  }
  return from_elements(n_, std::move(elems));
}

PermGroup close_group(unsigned n, std::vector<Perm> gens, std::size_t cap) {
  return PermGroup::close(n, std::move(gens), cap);
}

std::vector<PermGroup> all_subgroups(const PermGroup& G, std::size_t cap) {
  auto key_of = [](const std::vector<Perm>& elems) {
    std::vector<std::uint8_t> key;
    for (const Perm& g : elems) {
      key.insert(key.end(), g.images().begin(), g.images().end());
    }
    return key;
  };

  std::vector<PermGroup> found;
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<std::size_t> work;

  PermGroup triv = PermGroup::trivial(G.degree());
  seen.insert(key_of(triv.elements()));
  found.push_back(std::move(triv));
  work.push_back(0);

  while (!work.empty()) {
    std::size_t idx = work.back();
    work.pop_back();
    // Copy: found may reallocate while we extend.
    PermGroup H = found[idx];
    for (const Perm& g : G.elements()) {
      if (H.contains(g)) continue;
      std::vector<Perm> gens(H.elements());
      gens.push_back(g);
      PermGroup ext = PermGroup::close(G.degree(), std::move(gens), cap);
      auto key = key_of(ext.elements());
      if (seen.insert(std::move(key)).second) {
        found.push_back(std::move(ext));
        work.push_back(found.size() - 1);
      }
    }
  }
  std::sort(found.begin(), found.end(),
            [&](const PermGroup& a, const PermGroup& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a.elements() < b.elements();
            });
  return found;
}

unsigned coset_order(const Perm& sigma, const PermGroup& H) {
  Perm cur = sigma;
  unsigned j = 1;
  const unsigned limit = 1u << 20;
  while (!H.contains(cur)) {
    cur = cur * sigma;
    if (++j > limit) fail(ErrorKind::NotGenerator, "no power of sigma lies in H");
  }
  return j;
}

bool generates_with(const PermGroup& A, const PermGroup& H, const Perm& sigma) {
  return static_cast<std::size_t>(coset_order(sigma, H)) * H.size() == A.size();
}

}  // namespace excmap
