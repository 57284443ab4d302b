#include "mtt/mode_theory.hpp"

#include <algorithm>

namespace mtt {

std::string ModeTheory::mode_name(Mode m) const {
  auto names = mode_names();
  if (m.id >= names.size()) throw InstanceError("unknown mode #" + std::to_string(m.id));
  return names[m.id];
}

std::optional<Mode> ModeTheory::mode_by_name(std::string_view name) const {
  auto names = mode_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return Mode{static_cast<std::uint8_t>(i)};
  return std::nullopt;
}

void ModeTheory::check_valid(const Modality& mu) const {
  if (!has_mode(mu.dom) || !has_mode(mu.cod))
    throw InstanceError("modality endpoints are not modes of the " + std::string(name()) + " theory");
  auto gens = generators();
  // Walk the word from the codomain end: the first letter is applied to the codomain.
  Mode at = mu.cod;
  for (auto g : mu.word) {
    if (g >= gens.size()) throw InstanceError("unknown generator #" + std::to_string(g));
    if (!(gens[g].cod == at)) throw InstanceError("ill-formed modality word");
    at = gens[g].dom;
  }
  if (!(at == mu.dom)) throw InstanceError("modality word does not end at its domain");
}

Modality ModeTheory::id_mod(Mode m) const {
  if (!has_mode(m)) throw InstanceError("unknown mode #" + std::to_string(m.id));
  return Modality{m, m, {}};
}

std::optional<Modality> ModeTheory::generator(std::string_view name) const {
  auto gens = generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name)
      return Modality{gens[i].dom, gens[i].cod, {static_cast<std::uint8_t>(i)}};
  return std::nullopt;
}

Modality ModeTheory::compose_mod(const Modality& mu, const Modality& nu) const {
  if (!(mu.dom == nu.cod))
    throw CompositionError("cannot compose " + format_mod(mu) + " with " + format_mod(nu) +
                           ": mode mismatch");
  std::vector<std::uint8_t> word = mu.word;
  word.insert(word.end(), nu.word.begin(), nu.word.end());
  return Modality{nu.dom, mu.cod, normalize_word(std::move(word))};
}

bool ModeTheory::eq_mod(const Modality& mu, const Modality& nu) const {
  return mu.dom == nu.dom && mu.cod == nu.cod && normalize_word(mu.word) == normalize_word(nu.word);
}

std::optional<Modality> ModeTheory::right_divide(const Modality& whole, const Modality& suffix) const {
  if (!(whole.dom == suffix.dom) || suffix.word.size() > whole.word.size()) return std::nullopt;
  if (!std::equal(suffix.word.begin(), suffix.word.end(), whole.word.end() - suffix.word.size()))
    return std::nullopt;
  Modality rest{suffix.cod, whole.cod,
                {whole.word.begin(), whole.word.end() - static_cast<std::ptrdiff_t>(suffix.word.size())}};
  if (rest.word.empty() && !(rest.dom == rest.cod)) return std::nullopt;
  return rest;
}

Cell ModeTheory::id_cell(const Modality& mu) const { return Cell{mu, mu, 0}; }

Cell ModeTheory::vcomp(const Cell& outer, const Cell& inner) const {
  if (!eq_mod(inner.cod, outer.dom))
    throw CompositionError("vertical composition: " + format_cell(inner) + " does not meet " +
                           format_cell(outer));
  return Cell{inner.dom, outer.cod, 0};
}

Cell ModeTheory::hcomp(const Cell& left, const Cell& right) const {
  if (!(left.dom.dom == right.dom.cod))
    throw CompositionError("horizontal composition: mode mismatch");
  return Cell{compose_mod(left.dom, right.dom), compose_mod(left.cod, right.cod), 0};
}

bool ModeTheory::eq_cell(const Cell& a, const Cell& b) const {
  return eq_mod(a.dom, b.dom) && eq_mod(a.cod, b.cod) && a.rep == b.rep;
}

std::optional<Cell> ModeTheory::find_cell(const Modality& from, const Modality& to) const {
  if (!(from.dom == to.dom) || !(from.cod == to.cod)) return std::nullopt;
  if (!has_cell(from, to)) return std::nullopt;
  return Cell{from, to, 0};
}

std::string ModeTheory::format_mod(const Modality& mu) const {
  if (mu.word.empty()) return "id";
  auto gens = generators();
  std::string out;
  for (auto g : mu.word) {
    if (!out.empty()) out += ' ';
    out += g < gens.size() ? gens[g].name : "?";
  }
  return out;
}

std::string ModeTheory::format_cell(const Cell&) const { return "id"; }

std::string GuardedTheory::format_cell(const Cell& c) const {
  if (is_identity_cell(c)) return "id";
  return "(" + std::to_string(c.dom.word.size()) + "<=" + std::to_string(c.cod.word.size()) + ")";
}

Modality GuardedTheory::power(std::size_t n) const {
  return Modality{Mode{0}, Mode{0}, std::vector<std::uint8_t>(n, 0)};
}

std::shared_ptr<const ModeTheory> make_mode_theory(std::string_view name) {
  if (name == "trivial") return std::make_shared<TrivialTheory>();
  if (name == "walking") return std::make_shared<WalkingTheory>();
  if (name == "guarded") return std::make_shared<GuardedTheory>();
  throw InstanceError("unknown mode theory '" + std::string(name) + "'");
}

}  // namespace mtt
