#include "abelframe/transform.hpp"

namespace abelframe {

Signal delta(const GroupSpec& group, const GroupElement& at) {
  Signal f(group);
  f[group.element_index(at)] = 1.0;
  return f;
}

Complex inner(std::span<const Complex> f1, std::span<const Complex> f2) {
  if (f1.size() != f2.size()) throw InputError("inner product of vectors of different length");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < f1.size(); ++i) s += f1[i] * std::conj(f2[i]);
  return s;
}

Spectrum dft(const Signal& f) {
  const auto& G = f.group();
  const CharacterTable table(G);
  Spectrum out(G);
  for (std::size_t a = 0; a < G.order(); ++a) {
    Complex s{0.0, 0.0};
    for (std::size_t x = 0; x < G.order(); ++x) s += f[x] * std::conj(table(a, x));
    out[a] = s;
  }
  return out;
}

Signal idft(const Spectrum& F) {
  const auto& G = F.group();
  const CharacterTable table(G);
  const double scale = 1.0 / static_cast<double>(G.order());
  Signal out(G);
  for (std::size_t x = 0; x < G.order(); ++x) {
    Complex s{0.0, 0.0};
    for (std::size_t a = 0; a < G.order(); ++a) s += F[a] * table(a, x);
    out[x] = s * scale;
  }
  return out;
}

Signal convolve(const Signal& f1, const Signal& f2) {
  f1.check_same(f2);
  const auto& G = f1.group();
  Signal out(G);
  for (std::size_t x = 0; x < G.order(); ++x) {
    Complex s{0.0, 0.0};
    for (std::size_t y = 0; y < G.order(); ++y) s += f1[y] * f2[G.subtract_index(x, y)];
    out[x] = s;
  }
  return out;
}

Signal involution(const Signal& f) {
  const auto& G = f.group();
  Signal out(G);
  for (std::size_t g = 0; g < G.order(); ++g) out[g] = std::conj(f[G.negate_index(g)]);
  return out;
}

Signal translate_index(const Signal& f, std::size_t g) {
  const auto& G = f.group();
  if (g >= G.order()) throw InputError("translation index out of range");
  Signal out(G);
  for (std::size_t x = 0; x < G.order(); ++x) out[x] = f[G.subtract_index(x, g)];
  return out;
}

Signal translate(const Signal& f, const GroupElement& g) {
  return translate_index(f, f.group().element_index(g));
}

}  // namespace abelframe
