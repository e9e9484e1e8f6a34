#include "tfg/random.hpp"

#include <utility>

namespace tfg {

namespace {

void shuffle(std::vector<Digits>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

// A power carrying [from] onto [to] (same depth k), lifted by lift * p^k.
std::int64_t moving_power(int base, const Digits& from, const Digits& to,
                          std::int64_t lift) {
  return word_value(base, to) - word_value(base, from) +
         lift * checked_power(base, from.size());
}

void random_trie(int base, std::size_t depth_left, bool root, Digits& prefix,
                 Rng& rng, std::vector<Digits>& out) {
  const auto roll = uniform_below(rng, 10);
  if (depth_left == 0 || (!root && roll < 6)) {
    if (roll % 2 == 0) out.push_back(prefix);
    return;
  }
  if (root && roll < 2) {
    if (roll == 0) out.push_back(prefix);
    return;
  }
  for (int d = 0; d < base; ++d) {
    prefix.push_back(static_cast<Digit>(d));
    random_trie(base, depth_left - 1, false, prefix, rng, out);
    prefix.pop_back();
  }
}

}  // namespace

std::uint64_t uniform_below(Rng& rng, std::uint64_t n) { return rng() % n; }

std::int64_t uniform_between(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(
                  uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

ClopenSet random_clopen(int base, std::size_t max_depth, Rng& rng) {
  std::vector<Digits> words;
  Digits prefix;
  random_trie(base, max_depth, true, prefix, rng, words);
  return ClopenSet::canonicalize(base, std::move(words));
}

ClopenSet random_nonempty_clopen(int base, std::size_t max_depth, Rng& rng) {
  while (true) {
    ClopenSet s = random_clopen(base, max_depth, rng);
    if (!s.is_empty()) return s;
  }
}

FullGroupElement random_element(int base, std::size_t max_depth, Rng& rng) {
  const auto k = static_cast<std::size_t>(
      uniform_between(rng, 0, static_cast<std::int64_t>(max_depth)));
  const auto words = all_words(base, k);
  auto targets = words;
  shuffle(targets, rng);
  std::vector<Cell> cells;
  cells.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i)
    cells.push_back(Cell{words[i], moving_power(base, words[i], targets[i],
                                                uniform_between(rng, -2, 2))});
  return FullGroupElement::from_table(base, std::move(cells));
}

FullGroupElement random_element_inside(const ClopenSet& s, std::size_t extra_depth,
                                       Rng& rng) {
  const int base = s.base();
  if (s.is_empty()) return FullGroupElement::identity(base);
  const std::size_t k =
      s.depth() + static_cast<std::size_t>(uniform_between(
                      rng, 0, static_cast<std::int64_t>(extra_depth)));
  const auto words = refine_to_depth(s, k);
  auto targets = words;
  shuffle(targets, rng);
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < words.size(); ++i)
    cells.push_back(Cell{words[i], moving_power(base, words[i], targets[i],
                                                uniform_between(rng, -1, 1))});
  const ClopenSet rest = complement(s);
  for (const Digits& w : rest.words()) cells.push_back(Cell{w, 0});
  return FullGroupElement::from_table(base, std::move(cells));
}

FullGroupElement random_involution(int base, std::size_t max_depth, Rng& rng) {
  const auto k = static_cast<std::size_t>(
      uniform_between(rng, 1, static_cast<std::int64_t>(max_depth)));
  auto words = all_words(base, k);
  shuffle(words, rng);
  std::vector<Cell> cells;
  std::size_t i = 0;
  for (; i + 1 < words.size(); i += 2) {
    if (i > 0 && uniform_below(rng, 2) == 0) break;
    const std::int64_t n =
        moving_power(base, words[i], words[i + 1], uniform_between(rng, -1, 1));
    cells.push_back(Cell{words[i], n});
    cells.push_back(Cell{words[i + 1], -n});
  }
  for (; i < words.size(); ++i) cells.push_back(Cell{words[i], 0});
  return FullGroupElement::from_table(base, std::move(cells));
}

Point random_point(int base, std::size_t max_preperiod, std::size_t max_period,
                   Rng& rng) {
  auto draw = [&](std::size_t len) {
    Digits d(len);
    for (auto& x : d) x = static_cast<Digit>(uniform_below(rng, static_cast<std::uint64_t>(base)));
    return d;
  };
  const auto pre = static_cast<std::size_t>(
      uniform_between(rng, 0, static_cast<std::int64_t>(max_preperiod)));
  const auto per = static_cast<std::size_t>(
      uniform_between(rng, 1, static_cast<std::int64_t>(max_period)));
  return Point(base, draw(pre), draw(per));
}

}  // namespace tfg
