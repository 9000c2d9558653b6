#include "toporna/sampler.hpp"

#include <mutex>

#include "toporna/recursions.hpp"

namespace toporna {

namespace {

using Coeffs = std::vector<Integer>;

Coeffs convolve(const Coeffs& a, const Coeffs& b, std::size_t len) {
  Coeffs out(len, 0);
  for (std::size_t i = 0; i < len && i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < len && j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Walks the weights in order and returns the index whose bucket holds u.
std::size_t pick(const std::vector<Integer>& weights, const Integer& total, std::mt19937_64& rng) {
  Integer u = uniform_below(total, rng);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  throw std::logic_error("weights do not sum to the total");
}

const SampleSpec& validate(const SampleSpec& spec) {
  if (spec.n < 0 || spec.g < 0) throw SamplerError("n and g must be nonnegative");
  if (spec.lambda < 1 || spec.r < 1) throw SamplerError("lambda and r must be at least 1");
  if (spec.lambda > spec.r + 1) throw SamplerError("lambda must not exceed r + 1");
  if (spec.count < 0) throw SamplerError("count must be nonnegative");
  return spec;
}

// Shapes are costly to list, so they are kept for the life of the process.
const std::vector<Diagram>& cached_shapes(int g, int k, int ceiling) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<Diagram>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({g, k});
  if (it == cache.end()) {
    std::vector<Diagram> shapes;
    if (k == 0) shapes.push_back(Diagram(0, {}));
    else shapes = enumerate_shapes(g, k, ceiling);
    it = cache.emplace(std::make_pair(g, k), std::move(shapes)).first;
  }
  return it->second;
}

template <class Draw>
std::vector<Diagram> draw_all(const SampleSpec& spec, Draw&& draw) {
  std::vector<Diagram> out(static_cast<std::size_t>(spec.count));
#pragma omp parallel for schedule(static)
  for (long i = 0; i < spec.count; ++i) {
    auto rng = draw_rng(spec.seed, static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = draw(rng);
  }
  return out;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 draw_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ index));
}

Integer uniform_below(const Integer& bound, std::mt19937_64& rng) {
  if (bound <= 0) throw SamplerError("uniform_below needs a positive bound");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const std::size_t top_bits = bits - 64 * (words - 1);
  const std::uint64_t top_mask = top_bits == 64 ? ~0ULL : ((1ULL << top_bits) - 1);
  Integer out;
  do {
    out = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = rng();
      if (w == 0) word &= top_mask;
      out <<= 64;
      // mpz has no direct uint64 setter on every platform; go through two halves
      out += Integer(static_cast<unsigned long>(word >> 32)) << 32;
      out += static_cast<unsigned long>(word & 0xffffffffULL);
    }
  } while (out >= bound);
  return out;
}

SecondaryTables::SecondaryTables(int lambda_, int r_, int n_max)
    : lambda(lambda_), r(r_), all(static_cast<std::size_t>(n_max) + 1, 0),
      closed(static_cast<std::size_t>(n_max) + 1, 0) {
  all[0] = 1;
  for (int m = 1; m <= n_max; ++m) {
    Integer c = 0;
    for (int s = r; 2 * s <= m; ++s) {
      const int q = m - 2 * s;
      if (q >= lambda - 1) c += all[q] - closed[q];
    }
    closed[m] = c;
    Integer a = all[m - 1];
    for (int t = 1; t <= m; ++t) a += closed[t] * all[m - t];
    all[m] = a;
  }
}

std::vector<Diagram> sample_enumerative(const SampleSpec& spec, int ceiling) {
  validate(spec);
  EnumFilter filter;
  filter.lambda = spec.lambda;
  filter.r = spec.r;
  filter.genus_set = std::set<int>{spec.g};
  const auto family = list_diagrams(spec.n, filter, ceiling);
  if (family.empty()) throw SamplerError("no structures with these parameters");
  const Integer size(static_cast<unsigned long>(family.size()));
  return draw_all(spec, [&](std::mt19937_64& rng) {
    return family[uniform_below(size, rng).get_ui()];
  });
}

struct GrammarSampler::Stack {
  std::vector<int> sizes;  // arcs per stack, outermost first
  // gap pairs between consecutive stacks, as partner vectors of their own
  std::vector<std::pair<std::vector<int>, std::vector<int>>> gaps;
};

GrammarSampler::GrammarSampler(const SampleSpec& spec, int shape_ceiling)
    : spec_(validate(spec)), tables_(spec.lambda, spec.r, spec.n) {
  if (spec.n > kGrammarCap) throw SamplerError("grammar sampling is capped at n = " + std::to_string(kGrammarCap));
  const std::size_t len = static_cast<std::size_t>(spec.n) + 1;
  const Coeffs& d = tables_.all;
  stack_.assign(len, 0);
  for (std::size_t m = 2 * static_cast<std::size_t>(spec.r); m < len; m += 2) stack_[m] = 1;
  gap_pair_ = convolve(d, d, len);
  gap_pair_[0] -= 1;
  // H = K + K N H
  const Coeffs kn = convolve(stack_, gap_pair_, len);
  induced_.assign(len, 0);
  for (std::size_t m = 0; m < len; ++m) {
    Integer h = stack_[m];
    for (std::size_t u = 1; u <= m; ++u) h += kn[u] * induced_[m - u];
    induced_[m] = h;
  }

  const int k_max = spec.g == 0 ? 0 : std::min(6 * spec.g - 1, spec.n / (2 * spec.r));
  const int k_min = 2 * spec.g;
  // D^a H^b for every suffix a draw can meet
  std::vector<Coeffs> h_pow{Coeffs(len, 0)};
  h_pow[0][0] = 1;
  for (int b = 1; b <= std::max(k_max, 0); ++b) h_pow.push_back(convolve(h_pow.back(), induced_, len));
  for (int b = 0; b <= std::max(k_max, 0); ++b) {
    Coeffs cur = h_pow[static_cast<std::size_t>(b)];
    for (int a = 0; a <= 2 * std::max(k_max, 0) + 1; ++a) {
      if (a > 0) cur = convolve(cur, d, len);
      powers_[{a, b}] = cur;
    }
  }

  const Polynomial shapes = spec.g == 0 ? Polynomial{1} : shape_poly(spec.g);
  total_ = 0;
  for (int k = spec.g == 0 ? 0 : k_min; k <= k_max; ++k) {
    const Integer w = Integer(shapes[static_cast<std::size_t>(k)]) * powers_.at({2 * k + 1, k})[len - 1];
    if (w == 0) continue;
    arc_counts_.push_back(k);
    k_weight_.push_back(w);
    total_ += w;
    const auto& listed = cached_shapes(spec.g, k, shape_ceiling);
    if (Integer(static_cast<unsigned long>(listed.size())) != Integer(shapes[static_cast<std::size_t>(k)]))
      throw std::logic_error("shape listing disagrees with the shape polynomial");
    shapes_[k] = listed;
  }
  if (total_ == 0) throw SamplerError("no structures with these parameters");
}

const std::vector<Integer>& GrammarSampler::power(int d_count, int h_count) const {
  return powers_.at({d_count, h_count});
}

void GrammarSampler::secondary(std::vector<int>& partner, int offset, int m, bool spanning_allowed,
                               std::mt19937_64& rng) const {
  const Coeffs& all = tables_.all;
  const Coeffs& closed = tables_.closed;
  while (m > 0) {
    // unpaired first vertex, or a first component of length t
    std::vector<Integer> w;
    w.reserve(static_cast<std::size_t>(m) + 1);
    w.push_back(all[m - 1]);
    Integer total = all[m - 1];
    for (int t = 1; t <= m; ++t) {
      Integer x = (t == m && !spanning_allowed) ? Integer(0) : closed[t] * all[m - t];
      total += x;
      w.push_back(std::move(x));
    }
    const std::size_t c = pick(w, total, rng);
    spanning_allowed = true;
    if (c == 0) {
      ++offset;
      --m;
      continue;
    }
    const int t = static_cast<int>(c);
    std::vector<Integer> ws;
    std::vector<int> sizes;
    Integer wt = 0;
    for (int s = tables_.r; 2 * s <= t; ++s) {
      const int q = t - 2 * s;
      if (q < tables_.lambda - 1) continue;
      ws.push_back(all[q] - closed[q]);
      sizes.push_back(s);
      wt += ws.back();
    }
    const int s = sizes[pick(ws, wt, rng)];
    for (int a = 1; a <= s; ++a) {
      partner[offset + a] = offset + t + 1 - a;
      partner[offset + t + 1 - a] = offset + a;
    }
    secondary(partner, offset + s, t - 2 * s, false, rng);
    offset += t;
    m -= t;
  }
}

GrammarSampler::Stack GrammarSampler::induced_stack(int m, std::mt19937_64& rng) const {
  Stack out;
  const Coeffs& all = tables_.all;
  while (true) {
    // one last stack, or a stack, a gap pair and the rest
    std::vector<Integer> w{stack_[m]};
    std::vector<std::pair<int, int>> split{{m, 0}};
    for (int a = 2 * spec_.r; a < m; a += 2) {
      for (int b = 1; a + b < m; ++b) {
        Integer x = gap_pair_[b] * induced_[m - a - b];
        if (x == 0) continue;
        w.push_back(std::move(x));
        split.emplace_back(a, b);
      }
    }
    const auto [a, b] = split[pick(w, induced_[m], rng)];
    out.sizes.push_back(a / 2);
    if (b == 0) return out;
    std::vector<Integer> wg;
    for (int left = 0; left <= b; ++left) wg.push_back(left == 0 && b == 0 ? Integer(0) : all[left] * all[b - left]);
    const int left = static_cast<int>(pick(wg, gap_pair_[b], rng));
    std::vector<int> lp(static_cast<std::size_t>(left) + 1, 0), rp(static_cast<std::size_t>(b - left) + 1, 0);
    secondary(lp, 0, left, true, rng);
    secondary(rp, 0, b - left, true, rng);
    out.gaps.emplace_back(std::move(lp), std::move(rp));
    m -= a + b;
  }
}

Diagram GrammarSampler::draw(std::mt19937_64& rng) const {
  const int k = arc_counts_[pick(k_weight_, total_, rng)];
  const auto& pool = shapes_.at(k);
  const Diagram& shape = pool[uniform_below(Integer(static_cast<unsigned long>(pool.size())), rng).get_ui()];

  // factor sequence: gap 0, then per shape vertex (induced stack if left end) and a gap
  int d_left = 2 * k + 1, h_left = k;
  int remaining = spec_.n;
  auto take = [&](bool is_stack) {
    if (is_stack) --h_left;
    else --d_left;
    const Coeffs& self = is_stack ? induced_ : tables_.all;
    const Coeffs& rest = power(d_left, h_left);
    std::vector<Integer> w(static_cast<std::size_t>(remaining) + 1);
    for (int m = 0; m <= remaining; ++m) w[m] = self[m] * rest[remaining - m];
    const int m = static_cast<int>(pick(w, power(d_left + !is_stack, h_left + is_stack)[remaining], rng));
    remaining -= m;
    return m;
  };

  std::vector<int> partner(static_cast<std::size_t>(spec_.n) + 1, 0);
  int pos = 0;
  auto put_secondary = [&](const std::vector<int>& local) {
    const int m = static_cast<int>(local.size()) - 1;
    for (int v = 1; v <= m; ++v)
      if (local[v] > 0) partner[pos + v] = pos + local[v];
    pos += m;
  };
  auto gap = [&] {
    const int m = take(false);
    secondary(partner, pos, m, true, rng);
    pos += m;
  };

  std::map<int, Stack> stacks;                      // by shape left end
  std::map<int, std::vector<std::vector<int>>> lefts;  // positions per stack level
  gap();
  for (int p = 1; p <= 2 * k; ++p) {
    const int q = shape.partner(p);
    if (q > p) {
      Stack st = induced_stack(take(true), rng);
      auto& levels = lefts[p];
      for (std::size_t t = 0; t < st.sizes.size(); ++t) {
        if (t > 0) put_secondary(st.gaps[t - 1].first);
        levels.emplace_back();
        for (int a = 0; a < st.sizes[t]; ++a) levels.back().push_back(++pos);
      }
      stacks.emplace(p, std::move(st));
    } else {
      const Stack& st = stacks.at(q);
      const auto& levels = lefts.at(q);
      for (std::size_t t = st.sizes.size(); t-- > 0;) {
        const auto& lv = levels[t];
        for (auto it = lv.rbegin(); it != lv.rend(); ++it) {
          ++pos;
          partner[pos] = *it;
          partner[*it] = pos;
        }
        if (t > 0) put_secondary(st.gaps[t - 1].second);
      }
    }
    gap();
  }
  if (pos != spec_.n || remaining != 0) throw std::logic_error("grammar draw has the wrong length");
  return Diagram::from_partners(std::move(partner));
}

std::vector<Diagram> sample_grammar(const SampleSpec& spec) {
  const GrammarSampler sampler(spec);
  return draw_all(spec, [&](std::mt19937_64& rng) { return sampler.draw(rng); });
}

Census empirical_stats(const std::vector<Diagram>& samples) {
  if (samples.empty()) throw SamplerError("empirical_stats needs at least one sample");
  Census out;
  for (const auto& d : samples) out.add(d);
  return out;
}

}  // namespace toporna
