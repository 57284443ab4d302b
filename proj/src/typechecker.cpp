#include "mtt/typechecker.hpp"

#include <set>

#include "overloaded.hpp"

namespace mtt {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::scope: return "scope error";
    case ErrorKind::no_such_cell: return "no such cell";
    case ErrorKind::mode_mismatch: return "mode mismatch";
    case ErrorKind::not_a_function: return "not a function";
    case ErrorKind::not_a_mod: return "not a modal type";
    case ErrorKind::conversion_failure: return "conversion failure";
    case ErrorKind::universe: return "universe error";
    case ErrorKind::crisp_disabled: return "crisp J disabled";
    case ErrorKind::duplicate: return "duplicate definition";
    case ErrorKind::cannot_infer: return "cannot infer";
  }
  return "error";
}

ElabCtx ElabCtx::bind(const Nbe& nbe, const Modality& mu, VTy type) const {
  ElabCtx out = *this;
  out.env_ = env_.push_val(nbe.fresh(depth_, type, mu), mu);
  out.entries_.push_back({ElabEntry::Kind::bind, mu, std::move(type)});
  ++out.depth_;
  return out;
}

ElabCtx ElabCtx::define(const Modality& mu, VTy type, Value value) const {
  ElabCtx out = *this;
  out.env_ = env_.push_val(std::move(value), mu);
  out.entries_.push_back({ElabEntry::Kind::bind, mu, std::move(type)});
  ++out.depth_;
  return out;
}

ElabCtx ElabCtx::lock(const Modality& mu) const {
  ElabCtx out = *this;
  out.env_ = env_.push_lock(mu);
  out.entries_.push_back({ElabEntry::Kind::lock, mu, nullptr});
  out.mode_ = mu.dom;
  return out;
}

namespace {

[[noreturn]] void fail(ErrorKind kind, Span span, const std::string& msg) { throw TypeError(kind, span, msg); }

}  // namespace

ElabCtx Checker::lock(const ElabCtx& ctx, const Modality& mu, Span span) const {
  if (!(mu.cod == ctx.mode()))
    fail(ErrorKind::mode_mismatch, span,
         "modality " + th_.format_mod(mu) + " ends at mode " + th_.mode_name(mu.cod) + " but the context is at mode " +
             th_.mode_name(ctx.mode()));
  return ctx.lock(mu);
}

void Checker::expect_conv(const ElabCtx& ctx, const VTy& expected, const VTy& actual, Span span) const {
  NfTy e = nbe_.reify_ty(ctx.depth(), expected);
  NfTy a = nbe_.reify_ty(ctx.depth(), actual);
  if (nfty_eq(th_, e, a)) return;
  TypeError err(ErrorKind::conversion_failure, span, "type mismatch");
  err.expected = e;
  err.actual = a;
  err.depth = ctx.depth();
  throw err;
}

Ty Checker::motive_from(const ElabCtx& ctx, const VTy& a, std::size_t binders) const {
  return shift(decode_nfty(nbe_.reify_ty(ctx.depth(), a)), binders);
}

Tm Checker::code_of_type(const ElabCtx& ctx, const VTy& a, Span span) const {
  NfTy t = nbe_.reify_ty(ctx.depth(), a);
  auto dec = [](const NfTy& x) -> const NfDec* { return std::get_if<NfDec>(&x->node); };
  if (std::holds_alternative<NfBool>(t->node)) return make_tm(tm::BoolCode{});
  if (auto* m = std::get_if<NfMod>(&t->node)) {
    if (auto* c = dec(m->body)) return make_tm(tm::ModCode{m->mod, decode_nf(c->code)});
  }
  if (auto* p = std::get_if<NfPi>(&t->node)) {
    auto* d = dec(p->dom);
    auto* c = dec(p->cod);
    if (d && c) return make_tm(tm::PiCode{p->mod, decode_nf(d->code), decode_nf(c->code)});
  }
  if (auto* s = std::get_if<NfSig>(&t->node)) {
    auto* d = dec(s->fst);
    auto* c = dec(s->snd);
    if (d && c) return make_tm(tm::SigCode{decode_nf(d->code), decode_nf(c->code)});
  }
  fail(ErrorKind::universe, span, "type has no code in the universe");
}

std::pair<Cell, VTy> Checker::check_var(const ElabCtx& ctx, std::size_t k, const std::optional<Cell>& cell,
                                        Span span) const {
  const auto& es = ctx.entries();
  std::size_t pos = es.size();
  std::size_t seen = 0;
  for (std::size_t i = es.size(); i-- > 0;) {
    if (es[i].kind != ElabEntry::Kind::bind) continue;
    if (seen++ == k) {
      pos = i;
      break;
    }
  }
  if (pos == es.size()) fail(ErrorKind::scope, span, "variable index " + std::to_string(k) + " is out of scope");
  const ElabEntry& binder = es[pos];
  Modality locks = th_.id_mod(binder.mod.cod);
  for (std::size_t i = pos + 1; i < es.size(); ++i)
    if (es[i].kind == ElabEntry::Kind::lock) locks = th_.compose_mod(locks, es[i].mod);

  std::optional<Cell> alpha;
  if (cell) {
    if (th_.eq_mod(cell->dom, binder.mod) && th_.eq_mod(cell->cod, locks) && th_.find_cell(cell->dom, cell->cod))
      alpha = cell;
  } else {
    alpha = th_.find_cell(binder.mod, locks);
  }
  if (!alpha)
    fail(ErrorKind::no_such_cell, span,
         "no 2-cell from the variable's annotation " + th_.format_mod(binder.mod) + " to the locks " +
             th_.format_mod(locks) + (cell ? " matching " + th_.format_cell(*cell) : std::string()));
  return {*alpha, nbe_.val_restrict(binder.type, *alpha)};
}

std::pair<Ty, VTy> Checker::check_ty(const ElabCtx& ctx, const Ty& a) const {
  Ty out = std::visit(
      overloaded{
          [&](const ty::Pi& n) {
            ElabCtx locked = lock(ctx, n.mod, a->span);
            auto [dom, vdom] = check_ty(locked, n.dom);
            auto [cod, vcod] = check_ty(ctx.bind(nbe_, n.mod, vdom), n.cod);
            return make_ty(ty::Pi{n.mod, dom, cod}, a->span);
          },
          [&](const ty::Sig& n) {
            auto [fst, vfst] = check_ty(ctx, n.fst);
            auto [snd, vsnd] = check_ty(ctx.bind(nbe_, th_.id_mod(ctx.mode()), vfst), n.snd);
            return make_ty(ty::Sig{fst, snd}, a->span);
          },
          [&](const ty::Bool&) { return a; },
          [&](const ty::Id& n) {
            auto [type, vtype] = check_ty(ctx, n.type);
            return make_ty(ty::Id{type, check(ctx, n.lhs, vtype), check(ctx, n.rhs, vtype)}, a->span);
          },
          [&](const ty::Mod& n) {
            auto [body, vbody] = check_ty(lock(ctx, n.mod, a->span), n.body);
            return make_ty(ty::Mod{n.mod, body}, a->span);
          },
          [&](const ty::Uni&) { return a; },
          [&](const ty::Dec& n) {
            try {
              return make_ty(ty::Dec{check(ctx, n.code, make_value(VUni{}))}, a->span);
            } catch (const TypeError& e) {
              if (e.kind != ErrorKind::conversion_failure && e.kind != ErrorKind::cannot_infer) throw;
              fail(ErrorKind::universe, n.code->span, "Dec expects a code in the universe");
            }
          },
      },
      a->node);
  return {out, nbe_.eval_ty(ctx.env(), out)};
}

Tm Checker::check(const ElabCtx& ctx, const Tm& t, const VTy& a) const {
  const Span span = t->span;
  if (auto* lam = std::get_if<tm::Lam>(&t->node)) {
    auto* pi = std::get_if<VPi>(&a->node);
    if (!pi) fail(ErrorKind::not_a_function, span, "lambda checked against a non-function type");
    Value x = nbe_.fresh(ctx.depth(), pi->dom, pi->mod);
    Tm body = check(ctx.bind(nbe_, pi->mod, pi->dom), lam->body, nbe_.inst(pi->cod, x, pi->mod));
    return make_tm(tm::Lam{body}, span);
  }
  if (auto* pair = std::get_if<tm::Pair>(&t->node)) {
    auto* sig = std::get_if<VSig>(&a->node);
    if (!sig) fail(ErrorKind::conversion_failure, span, "pair checked against a non-pair type");
    Tm fst = check(ctx, pair->fst, sig->fst);
    Value vfst = nbe_.eval(ctx.env(), fst);
    Tm snd = check(ctx, pair->snd, nbe_.inst(sig->snd, vfst, th_.id_mod(ctx.mode())));
    return make_tm(tm::Pair{fst, snd}, span);
  }
  if (auto* box = std::get_if<tm::MkBox>(&t->node)) {
    auto* m = std::get_if<VMod>(&a->node);
    if (!m) fail(ErrorKind::not_a_mod, span, "mod checked against a non-modal type");
    if (!th_.eq_mod(m->mod, box->mod))
      fail(ErrorKind::mode_mismatch, span,
           "mod_" + th_.format_mod(box->mod) + " checked against a type under " + th_.format_mod(m->mod));
    Tm body = check(lock(ctx, box->mod, span), box->body, m->body);
    return make_tm(tm::MkBox{box->mod, body}, span);
  }
  if (auto* refl = std::get_if<tm::Refl>(&t->node)) {
    if (auto* id = std::get_if<VId>(&a->node)) {
      Tm value = check(ctx, refl->value, id->type);
      Value v = nbe_.eval(ctx.env(), value);
      VTy self = make_value(VId{id->type, v, v});
      expect_conv(ctx, a, self, span);
      return make_tm(tm::Refl{value}, span);
    }
  }
  if (auto* down = std::get_if<tm::Down>(&t->node)) {
    if (auto* dec = std::get_if<VDec>(&a->node)) {
      auto k = code_kind_of(dec->code);
      if (!k) fail(ErrorKind::universe, span, "down into a neutral code");
      if (down->kind && *down->kind != *k) fail(ErrorKind::universe, span, "down kind does not match the code");
      Tm body = check(ctx, down->body, nbe_.decode_code(dec->code));
      return make_tm(tm::Down{*k, body}, span);
    }
  }
  // Eliminators with an omitted motive take the expected type, weakened.
  if (auto* n = std::get_if<tm::If>(&t->node); n && !n->motive)
    return check(ctx, make_tm(tm::If{motive_from(ctx, a, 1), n->then_case, n->else_case, n->scrut}, span), a);
  if (auto* n = std::get_if<tm::J>(&t->node); n && !n->motive)
    return check(ctx, make_tm(tm::J{motive_from(ctx, a, 3), n->refl_case, n->proof}, span), a);
  if (auto* n = std::get_if<tm::CrispJ>(&t->node); n && !n->motive)
    return check(ctx, make_tm(tm::CrispJ{n->mod, motive_from(ctx, a, 3), n->refl_case, n->proof}, span), a);
  if (auto* n = std::get_if<tm::LetMod>(&t->node); n && !n->motive)
    return check(ctx, make_tm(tm::LetMod{n->frame, n->main, motive_from(ctx, a, 1), n->scrut, n->body}, span), a);
  // A redex (\x. b) u: annotate the lambda from the argument's type.
  if (auto* n = std::get_if<tm::App>(&t->node); n && std::holds_alternative<tm::Lam>(n->fn->node)) {
    ElabCtx inner = lock(ctx, n->mod, span);
    VTy dom = infer(inner, n->arg).second;
    Ty pi = make_ty(ty::Pi{n->mod, decode_nfty(nbe_.reify_ty(inner.depth(), dom)), motive_from(ctx, a, 1)});
    return check(ctx, make_tm(tm::App{n->mod, make_tm(tm::Ann{n->fn, pi}, n->fn->span), n->arg}, span), a);
  }

  auto [elab, actual] = infer(ctx, t);
  expect_conv(ctx, a, actual, span);
  return elab;
}

std::pair<Tm, VTy> Checker::infer(const ElabCtx& ctx, const Tm& t) const {
  const Span span = t->span;
  const Env& env = ctx.env();
  auto cannot = [&](const char* what) -> std::pair<Tm, VTy> {
    fail(ErrorKind::cannot_infer, span, std::string("cannot infer the type of ") + what + "; add an annotation");
  };
  VTy uni = make_value(VUni{});
  VTy boolean = make_value(VBool{});
  return std::visit(
      overloaded{
          [&](const tm::Var& n) -> std::pair<Tm, VTy> {
            auto [cell, type] = check_var(ctx, n.index, n.cell, span);
            return {make_tm(tm::Var{n.index, cell}, span), type};
          },
          [&](const tm::Lam&) { return cannot("a lambda"); },
          [&](const tm::Pair&) { return cannot("a pair"); },
          [&](const tm::MkBox&) { return cannot("a mod"); },
          [&](const tm::App& n) -> std::pair<Tm, VTy> {
            ElabCtx locked = lock(ctx, n.mod, span);
            auto [fn, ftype] = infer(ctx, n.fn);
            auto* pi = std::get_if<VPi>(&ftype->node);
            if (!pi) fail(ErrorKind::not_a_function, n.fn->span, "applying a term that is not a function");
            if (!th_.eq_mod(pi->mod, n.mod))
              fail(ErrorKind::mode_mismatch, span,
                   "function expects an argument under " + th_.format_mod(pi->mod) + " but is applied under " +
                       th_.format_mod(n.mod));
            Tm arg = check(locked, n.arg, pi->dom);
            VTy result = nbe_.inst(pi->cod, nbe_.eval(locked.env(), arg), pi->mod);
            return {make_tm(tm::App{n.mod, fn, arg}, span), result};
          },
          [&](const tm::Fst& n) -> std::pair<Tm, VTy> {
            auto [p, ptype] = infer(ctx, n.pair);
            auto* sig = std::get_if<VSig>(&ptype->node);
            if (!sig) fail(ErrorKind::conversion_failure, n.pair->span, "projection from a term that is not a pair");
            return {make_tm(tm::Fst{p}, span), sig->fst};
          },
          [&](const tm::Snd& n) -> std::pair<Tm, VTy> {
            auto [p, ptype] = infer(ctx, n.pair);
            auto* sig = std::get_if<VSig>(&ptype->node);
            if (!sig) fail(ErrorKind::conversion_failure, n.pair->span, "projection from a term that is not a pair");
            Value f = nbe_.do_fst(nbe_.eval(env, p));
            return {make_tm(tm::Snd{p}, span), nbe_.inst(sig->snd, f, th_.id_mod(ctx.mode()))};
          },
          [&](const tm::True&) -> std::pair<Tm, VTy> { return {t, boolean}; },
          [&](const tm::False&) -> std::pair<Tm, VTy> { return {t, boolean}; },
          [&](const tm::If& n) -> std::pair<Tm, VTy> {
            if (!n.motive) return cannot("an if without a return clause");
            Modality id = th_.id_mod(ctx.mode());
            Tm scrut = check(ctx, n.scrut, boolean);
            auto [motive, vm] = check_ty(ctx.bind(nbe_, id, boolean), n.motive);
            TyClosure mc{env, motive};
            Tm then_case = check(ctx, n.then_case, nbe_.inst(mc, make_value(VTrue{}), id));
            Tm else_case = check(ctx, n.else_case, nbe_.inst(mc, make_value(VFalse{}), id));
            VTy result = nbe_.inst(mc, nbe_.eval(env, scrut), id);
            return {make_tm(tm::If{motive, then_case, else_case, scrut}, span), result};
          },
          [&](const tm::Refl& n) -> std::pair<Tm, VTy> {
            auto [value, type] = infer(ctx, n.value);
            Value v = nbe_.eval(env, value);
            return {make_tm(tm::Refl{value}, span), make_value(VId{type, v, v})};
          },
          [&](const tm::J& n) -> std::pair<Tm, VTy> {
            if (!n.motive) return cannot("a J without a return clause");
            Modality id = th_.id_mod(ctx.mode());
            auto [proof, ptype] = infer(ctx, n.proof);
            auto* idt = std::get_if<VId>(&ptype->node);
            if (!idt) fail(ErrorKind::conversion_failure, n.proof->span, "J on a term that is not an identification");
            std::size_t d = ctx.depth();
            Value x = nbe_.fresh(d, idt->type, id);
            Value y = nbe_.fresh(d + 1, idt->type, id);
            ElabCtx mctx = ctx.bind(nbe_, id, idt->type)
                               .bind(nbe_, id, idt->type)
                               .bind(nbe_, id, make_value(VId{idt->type, x, y}));
            auto [motive, vm] = check_ty(mctx, n.motive);
            TyClosure mc{env, motive};
            Value z = nbe_.fresh(d, idt->type, id);
            Tm refl = check(ctx.bind(nbe_, id, idt->type), n.refl_case,
                            nbe_.inst3(mc, z, z, make_value(VRefl{z}), id));
            VTy result = nbe_.inst3(mc, idt->lhs, idt->rhs, nbe_.eval(env, proof), id);
            return {make_tm(tm::J{motive, refl, proof}, span), result};
          },
          [&](const tm::CrispJ& n) -> std::pair<Tm, VTy> {
            if (!crisp_) fail(ErrorKind::crisp_disabled, span, "crispJ requires the crisp feature (--crisp)");
            if (!n.motive) return cannot("a crispJ without a return clause");
            ElabCtx locked = lock(ctx, n.mod, span);
            auto [proof, ptype] = infer(locked, n.proof);
            auto* idt = std::get_if<VId>(&ptype->node);
            if (!idt)
              fail(ErrorKind::conversion_failure, n.proof->span, "crispJ on a term that is not an identification");
            std::size_t d = ctx.depth();
            Value x = nbe_.fresh(d, idt->type, n.mod);
            Value y = nbe_.fresh(d + 1, idt->type, n.mod);
            ElabCtx mctx = ctx.bind(nbe_, n.mod, idt->type)
                               .bind(nbe_, n.mod, idt->type)
                               .bind(nbe_, n.mod, make_value(VId{idt->type, x, y}));
            auto [motive, vm] = check_ty(mctx, n.motive);
            TyClosure mc{env, motive};
            Value z = nbe_.fresh(d, idt->type, n.mod);
            Tm refl = check(ctx.bind(nbe_, n.mod, idt->type), n.refl_case,
                            nbe_.inst3(mc, z, z, make_value(VRefl{z}), n.mod));
            VTy result = nbe_.inst3(mc, idt->lhs, idt->rhs, nbe_.eval(locked.env(), proof), n.mod);
            return {make_tm(tm::CrispJ{n.mod, motive, refl, proof}, span), result};
          },
          [&](const tm::LetMod& n) -> std::pair<Tm, VTy> {
            if (!n.motive) return cannot("a let mod without a return clause");
            ElabCtx locked = lock(ctx, n.frame, span);
            auto [scrut, stype] = infer(locked, n.scrut);
            auto* m = std::get_if<VMod>(&stype->node);
            if (!m) fail(ErrorKind::not_a_mod, n.scrut->span, "let mod on a term that is not of modal type");
            if (!th_.eq_mod(m->mod, n.main))
              fail(ErrorKind::mode_mismatch, span,
                   "let mod_" + th_.format_mod(n.main) + " on a term of type under " + th_.format_mod(m->mod));
            Modality both = th_.compose_mod(n.frame, n.main);
            auto [motive, vm] = check_ty(ctx.bind(nbe_, n.frame, stype), n.motive);
            TyClosure mc{env, motive};
            Value y = nbe_.fresh(ctx.depth(), m->body, both);
            Tm body = check(ctx.bind(nbe_, both, m->body), n.body,
                            nbe_.inst(mc, make_value(VMkBox{n.main, y}), n.frame));
            VTy result = nbe_.inst(mc, nbe_.eval(locked.env(), scrut), n.frame);
            return {make_tm(tm::LetMod{n.frame, n.main, motive, scrut, body}, span), result};
          },
          [&](const tm::PiCode& n) -> std::pair<Tm, VTy> {
            ElabCtx locked = lock(ctx, n.mod, span);
            Tm dom = check(locked, n.dom, uni);
            VTy vdom = make_value(VDec{nbe_.eval(locked.env(), dom)});
            Tm cod = check(ctx.bind(nbe_, n.mod, vdom), n.cod, uni);
            return {make_tm(tm::PiCode{n.mod, dom, cod}, span), uni};
          },
          [&](const tm::SigCode& n) -> std::pair<Tm, VTy> {
            Tm fst = check(ctx, n.fst, uni);
            VTy vfst = make_value(VDec{nbe_.eval(env, fst)});
            Tm snd = check(ctx.bind(nbe_, th_.id_mod(ctx.mode()), vfst), n.snd, uni);
            return {make_tm(tm::SigCode{fst, snd}, span), uni};
          },
          [&](const tm::BoolCode&) -> std::pair<Tm, VTy> { return {t, uni}; },
          [&](const tm::ModCode& n) -> std::pair<Tm, VTy> {
            Tm code = check(lock(ctx, n.mod, span), n.code, uni);
            return {make_tm(tm::ModCode{n.mod, code}, span), uni};
          },
          [&](const tm::Up& n) -> std::pair<Tm, VTy> {
            auto [body, btype] = infer(ctx, n.body);
            auto* dec = std::get_if<VDec>(&btype->node);
            if (!dec) fail(ErrorKind::universe, n.body->span, "up expects an element of a decoded code");
            auto k = code_kind_of(dec->code);
            if (!k) fail(ErrorKind::universe, span, "up at a neutral code");
            if (n.kind && *n.kind != *k) fail(ErrorKind::universe, span, "up kind does not match the code");
            return {make_tm(tm::Up{*k, body}, span), nbe_.decode_code(dec->code)};
          },
          [&](const tm::Down& n) -> std::pair<Tm, VTy> {
            auto [body, btype] = infer(ctx, n.body);
            Tm code = code_of_type(ctx, btype, span);
            Value vcode = nbe_.eval(env, code);
            CodeKind k = *code_kind_of(vcode);
            if (n.kind && *n.kind != k) fail(ErrorKind::universe, span, "down kind does not match the type");
            return {make_tm(tm::Down{k, body}, span), make_value(VDec{vcode})};
          },
          [&](const tm::Ann& n) -> std::pair<Tm, VTy> {
            auto [type, vtype] = check_ty(ctx, n.type);
            Tm term = check(ctx, n.term, vtype);
            return {make_tm(tm::Ann{term, type}, span), vtype};
          },
      },
      t->node);
}

bool Checker::convertible_tm(const ElabCtx& ctx, const VTy& a, const Tm& m, const Tm& n) const {
  Nf u = nbe_.reify(ctx.depth(), a, nbe_.eval(ctx.env(), m));
  Nf v = nbe_.reify(ctx.depth(), a, nbe_.eval(ctx.env(), n));
  return nf_eq(th_, u, v);
}

bool Checker::convertible_ty(const ElabCtx& ctx, const Ty& a, const Ty& b) const {
  NfTy u = nbe_.reify_ty(ctx.depth(), nbe_.eval_ty(ctx.env(), a));
  NfTy v = nbe_.reify_ty(ctx.depth(), nbe_.eval_ty(ctx.env(), b));
  return nfty_eq(th_, u, v);
}

std::pair<std::vector<CheckedDecl>, ElabCtx> Checker::check_program(const std::vector<Decl>& decls) const {
  ElabCtx ctx = empty_ctx();
  std::vector<CheckedDecl> out;
  std::set<std::string> names;
  for (const auto& d : decls) {
    if (!names.insert(d.name).second) fail(ErrorKind::duplicate, d.span, "'" + d.name + "' is already defined");
    Tm term;
    Ty type;
    VTy vtype;
    if (d.type) {
      std::tie(type, vtype) = check_ty(ctx, d.type);
      term = check(ctx, d.term, vtype);
    } else {
      std::tie(term, vtype) = infer(ctx, d.term);
      type = decode_nfty(nbe_.reify_ty(ctx.depth(), vtype));
    }
    Value value = nbe_.eval(ctx.env(), term);
    out.push_back({d.name, type, term, vtype, value});
    ctx = ctx.define(th_.id_mod(ctx.mode()), vtype, value);
  }
  return {std::move(out), std::move(ctx)};
}

}  // namespace mtt
