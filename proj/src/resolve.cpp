#include <type_traits>

#include "mtt/surface.hpp"
#include "overloaded.hpp"

namespace mtt {

Modality resolve_mod(const ModeTheory& theory, Mode at, const SMod& m) {
  Modality acc = theory.id_mod(at);
  for (const auto& g : m.gens) {
    auto gen = theory.generator(g);
    if (!gen) throw ResolveError(m.span, "unknown modality '" + g + "' in the " + std::string(theory.name()) + " theory");
    if (!(gen->cod == acc.dom))
      throw ResolveError(m.span, "modality '" + g + "' does not start at mode " + theory.mode_name(acc.dom));
    acc = theory.compose_mod(acc, *gen);
  }
  return acc;
}

namespace {

class Resolver {
 public:
  Resolver(const ModeTheory& theory, Scope scope) : th_(theory), scope_(std::move(scope)) {}

  Tm tm(const STm& t) {
    const Span span = t->span;
    return std::visit(
        overloaded{
            [&](const stm::Var& n) { return var(n, span); },
            [&](const stm::Lam& n) { return make_tm(tm::Lam{bound(n.name, n.body)}, span); },
            [&](const stm::App& n) {
              Modality mu = mod(n.mod);
              Tm fn = tm(n.fn);
              Tm arg = locked(mu, [&] { return tm(n.arg); });
              return make_tm(tm::App{mu, fn, arg}, span);
            },
            [&](const stm::Pair& n) { return make_tm(tm::Pair{tm(n.fst), tm(n.snd)}, span); },
            [&](const stm::Fst& n) { return make_tm(tm::Fst{tm(n.pair)}, span); },
            [&](const stm::Snd& n) { return make_tm(tm::Snd{tm(n.pair)}, span); },
            [&](const stm::True&) { return make_tm(tm::True{}, span); },
            [&](const stm::False&) { return make_tm(tm::False{}, span); },
            [&](const stm::If& n) {
              Ty motive = n.motive ? motive_ty(*n.motive) : nullptr;
              return make_tm(tm::If{motive, tm(n.then_case), tm(n.else_case), tm(n.scrut)}, span);
            },
            [&](const stm::Refl& n) { return make_tm(tm::Refl{tm(n.value)}, span); },
            [&](const stm::J& n) {
              Ty motive = n.motive ? motive_ty(*n.motive) : nullptr;
              Tm refl = bound(n.name, n.refl_case);
              return make_tm(tm::J{motive, refl, tm(n.proof)}, span);
            },
            [&](const stm::CrispJ& n) {
              Modality mu = mod(n.mod);
              Ty motive = n.motive ? motive_ty(*n.motive) : nullptr;
              Tm refl = bound(n.name, n.refl_case);
              Tm proof = locked(mu, [&] { return tm(n.proof); });
              return make_tm(tm::CrispJ{mu, motive, refl, proof}, span);
            },
            [&](const stm::MkBox& n) {
              Modality mu = mod(n.mod);
              return make_tm(tm::MkBox{mu, locked(mu, [&] { return tm(n.body); })}, span);
            },
            [&](const stm::LetMod& n) {
              Modality frame = mod(n.frame);
              Modality main = resolve_mod(th_, frame.dom, n.main);
              Tm scrut = locked(frame, [&] { return tm(n.scrut); });
              Ty motive = n.motive ? motive_ty(*n.motive) : nullptr;
              Tm body = bound(n.name, n.body);
              return make_tm(tm::LetMod{frame, main, motive, scrut, body}, span);
            },
            [&](const stm::PiCode& n) {
              Modality mu = mod(n.mod);
              Tm dom = locked(mu, [&] { return tm(n.dom); });
              return make_tm(tm::PiCode{mu, dom, bound(n.name, n.cod)}, span);
            },
            [&](const stm::SigCode& n) {
              Tm fst = tm(n.fst);
              return make_tm(tm::SigCode{fst, bound(n.name, n.snd)}, span);
            },
            [&](const stm::BoolCode&) { return make_tm(tm::BoolCode{}, span); },
            [&](const stm::ModCode& n) {
              Modality mu = mod(n.mod);
              return make_tm(tm::ModCode{mu, locked(mu, [&] { return tm(n.code); })}, span);
            },
            [&](const stm::Up& n) { return make_tm(tm::Up{std::nullopt, tm(n.body)}, span); },
            [&](const stm::Down& n) { return make_tm(tm::Down{std::nullopt, tm(n.body)}, span); },
            [&](const stm::Ann& n) {
              Tm term = tm(n.term);
              return make_tm(tm::Ann{term, ty(n.type)}, span);
            },
        },
        t->node);
  }

  Ty ty(const STy& a) {
    const Span span = a->span;
    return std::visit(
        overloaded{
            [&](const sty::Pi& n) {
              Modality mu = mod(n.mod);
              Ty dom = locked(mu, [&] { return ty(n.dom); });
              return make_ty(ty::Pi{mu, dom, bound_ty(n.name, n.cod)}, span);
            },
            [&](const sty::Sig& n) {
              Ty fst = ty(n.fst);
              return make_ty(ty::Sig{fst, bound_ty(n.name, n.snd)}, span);
            },
            [&](const sty::Bool&) { return make_ty(ty::Bool{}, span); },
            [&](const sty::Uni&) { return make_ty(ty::Uni{}, span); },
            [&](const sty::Dec& n) { return make_ty(ty::Dec{tm(n.code)}, span); },
            [&](const sty::Id& n) {
              Ty type = ty(n.type);
              Tm lhs = tm(n.lhs);
              return make_ty(ty::Id{type, lhs, tm(n.rhs)}, span);
            },
            [&](const sty::Mod& n) {
              Modality mu = mod(n.mod);
              return make_ty(ty::Mod{mu, locked(mu, [&] { return ty(n.body); })}, span);
            },
        },
        a->node);
  }

 private:
  Mode mode() const {
    Mode m = scope_.base;
    for (const auto& e : scope_.entries)
      if (e.is_lock) m = e.mod.dom;
    return m;
  }

  Modality mod(const SMod& m) const { return resolve_mod(th_, mode(), m); }

  template <typename F>
  std::invoke_result_t<F> locked(const Modality& mu, F&& f) {
    scope_.entries.push_back({true, "", mu});
    auto out = f();
    scope_.entries.pop_back();
    return out;
  }

  void push(const std::string& name) { scope_.entries.push_back({false, name, th_.id_mod(mode())}); }
  void pop(std::size_t n = 1) {
    for (std::size_t i = 0; i < n; ++i) scope_.entries.pop_back();
  }

  Tm bound(const std::string& name, const STm& body) {
    push(name);
    Tm out = tm(body);
    pop();
    return out;
  }

  Ty bound_ty(const std::string& name, const STy& body) {
    push(name);
    Ty out = ty(body);
    pop();
    return out;
  }

  Ty motive_ty(const SMotive& m) {
    for (const auto& n : m.names) push(n);
    Ty out = ty(m.type);
    pop(m.names.size());
    return out;
  }

  Tm var(const stm::Var& v, Span span) {
    std::size_t index = 0;
    Modality locks = th_.id_mod(mode());
    for (std::size_t i = scope_.entries.size(); i-- > 0;) {
      const auto& e = scope_.entries[i];
      if (e.is_lock) {
        locks = th_.compose_mod(e.mod, locks);
        continue;
      }
      if (!e.name.empty() && e.name == v.name) {
        std::optional<Cell> cell;
        if (v.cell) {
          if (v.cell->identity) {
            cell = th_.id_cell(locks);
          } else {
            auto* guarded = dynamic_cast<const GuardedTheory*>(&th_);
            if (!guarded)
              throw ResolveError(v.cell->span, "cell literals (a<=b) are only available in the guarded theory");
            cell = Cell{guarded->power(v.cell->from), guarded->power(v.cell->to), 0};
          }
        }
        return make_tm(tm::Var{index, cell}, span);
      }
      ++index;
    }
    throw ResolveError(span, "unbound name '" + v.name + "'");
  }

  const ModeTheory& th_;
  Scope scope_;
};

}  // namespace

Tm resolve_tm(const ModeTheory& theory, const Scope& scope, const STm& t) { return Resolver(theory, scope).tm(t); }
Ty resolve_ty(const ModeTheory& theory, const Scope& scope, const STy& t) { return Resolver(theory, scope).ty(t); }

}  // namespace mtt
