#include "mtt/nbe.hpp"

#include <type_traits>

#include "overloaded.hpp"

namespace mtt {

// ---- environments ---------------------------------------------------------

std::size_t Env::size() const { return top_ ? top_->size : 0; }

Env Env::push_val(Value v, const Modality& mu) const {
  return Env(std::make_shared<const EnvNode>(EnvNode{{EnvEntry::Kind::val, std::move(v), mu, {}}, top_, size() + 1}),
             mode_);
}

Env Env::push_lock(const Modality& mu) const {
  if (!(mu.cod == mode_)) throw ImpossibleByTyping("lock does not start at the current mode");
  return Env(std::make_shared<const EnvNode>(EnvNode{{EnvEntry::Kind::lock, nullptr, mu, {}}, top_, size() + 1}),
             mu.dom);
}

Env Env::push_key(const Cell& alpha, const Modality& xi) const {
  return Env(std::make_shared<const EnvNode>(EnvNode{{EnvEntry::Kind::key, nullptr, xi, alpha}, top_, size() + 1}),
             mode_);
}

std::optional<CodeKind> code_kind_of(const Value& code) {
  return std::visit(overloaded{
                        [](const VPiCode&) -> std::optional<CodeKind> { return CodeKind::pi; },
                        [](const VSigCode&) -> std::optional<CodeKind> { return CodeKind::sig; },
                        [](const VBoolCode&) -> std::optional<CodeKind> { return CodeKind::boolean; },
                        [](const VModCode&) -> std::optional<CodeKind> { return CodeKind::mod; },
                        [](const auto&) -> std::optional<CodeKind> { return std::nullopt; },
                    },
                    code->node);
}

namespace {

CodeKind kind_of_type(const VTy& a) {
  return std::visit(overloaded{
                        [](const VPi&) { return CodeKind::pi; },
                        [](const VSig&) { return CodeKind::sig; },
                        [](const VBool&) { return CodeKind::boolean; },
                        [](const VMod&) { return CodeKind::mod; },
                        [](const auto&) -> CodeKind { throw ImpossibleByTyping("down at a type with no code"); },
                    },
                    a->node);
}

CodeKind kind_of_value(const Value& v) {
  return std::visit(overloaded{
                        [](const VLam&) { return CodeKind::pi; },
                        [](const VPair&) { return CodeKind::sig; },
                        [](const VTrue&) { return CodeKind::boolean; },
                        [](const VFalse&) { return CodeKind::boolean; },
                        [](const VMkBox&) { return CodeKind::mod; },
                        [](const VNeutral& n) { return kind_of_type(n.type); },
                        [](const auto&) -> CodeKind { throw ImpossibleByTyping("down of a non-canonical value"); },
                    },
                    v->node);
}

Neutral extend(const Neutral& ne, Frame f) {
  Neutral out = ne;
  out.frames.push_back(std::move(f));
  return out;
}

}  // namespace

// ---- evaluation -----------------------------------------------------------

Value Nbe::lookup(const Env& env, std::size_t k, const std::optional<Cell>& cell) const {
  std::vector<const EnvEntry*> after;  // newest first
  const EnvNode* n = env.top().get();
  std::size_t seen = 0;
  for (; n; n = n->prev.get()) {
    if (n->entry.kind == EnvEntry::Kind::val) {
      if (seen == k) break;
      ++seen;
    } else {
      after.push_back(&n->entry);
    }
  }
  if (!n) throw ImpossibleByTyping("unbound variable " + std::to_string(k));
  const EnvEntry& binder = n->entry;

  Modality locks = th_.id_mod(binder.mod.cod);
  for (auto it = after.rbegin(); it != after.rend(); ++it)
    if ((*it)->kind == EnvEntry::Kind::lock) locks = th_.compose_mod(locks, (*it)->mod);

  Cell alpha;
  if (cell) {
    if (!th_.eq_mod(cell->dom, binder.mod) || !th_.eq_mod(cell->cod, locks))
      throw ImpossibleByTyping("variable cell does not match its binder and locks");
    alpha = *cell;
  } else {
    auto found = th_.find_cell(binder.mod, locks);
    if (!found) throw ImpossibleByTyping("no cell from the binder annotation to the locks");
    alpha = *found;
  }
  Value w = val_restrict(binder.value, alpha);

  std::vector<std::pair<Cell, Modality>> keys;  // newest first
  Modality suffix = th_.id_mod(env.mode());
  for (const EnvEntry* e : after) {
    if (e->kind == EnvEntry::Kind::lock)
      suffix = th_.compose_mod(e->mod, suffix);
    else
      keys.emplace_back(e->cell, th_.compose_mod(e->mod, suffix));
  }
  for (auto it = keys.rbegin(); it != keys.rend(); ++it) w = val_restrict(w, it->first, it->second);
  return w;
}

Value Nbe::eval(const Env& env, const Tm& t) const {
  return std::visit(
      overloaded{
          [&](const tm::Var& n) { return lookup(env, n.index, n.cell); },
          [&](const tm::Lam& n) { return make_value(VLam{TmClosure{env, n.body}}); },
          [&](const tm::App& n) { return do_app(n.mod, eval(env, n.fn), eval(env.push_lock(n.mod), n.arg)); },
          [&](const tm::Pair& n) { return make_value(VPair{eval(env, n.fst), eval(env, n.snd)}); },
          [&](const tm::Fst& n) { return do_fst(eval(env, n.pair)); },
          [&](const tm::Snd& n) { return do_snd(eval(env, n.pair)); },
          [&](const tm::True&) { return make_value(VTrue{}); },
          [&](const tm::False&) { return make_value(VFalse{}); },
          [&](const tm::If& n) {
            return do_if(TyClosure{env, n.motive}, eval(env, n.then_case), eval(env, n.else_case),
                         eval(env, n.scrut));
          },
          [&](const tm::Refl& n) { return make_value(VRefl{eval(env, n.value)}); },
          [&](const tm::J& n) {
            return do_j(TyClosure{env, n.motive}, TmClosure{env, n.refl_case}, eval(env, n.proof));
          },
          [&](const tm::MkBox& n) { return make_value(VMkBox{n.mod, eval(env.push_lock(n.mod), n.body)}); },
          [&](const tm::LetMod& n) {
            return do_letmod(n.frame, n.main, TyClosure{env, n.motive}, eval(env.push_lock(n.frame), n.scrut),
                             TmClosure{env, n.body});
          },
          [&](const tm::PiCode& n) {
            return make_value(VPiCode{n.mod, eval(env.push_lock(n.mod), n.dom), TmClosure{env, n.cod}});
          },
          [&](const tm::SigCode& n) { return make_value(VSigCode{eval(env, n.fst), TmClosure{env, n.snd}}); },
          [&](const tm::BoolCode&) { return make_value(VBoolCode{}); },
          [&](const tm::ModCode& n) { return make_value(VModCode{n.mod, eval(env.push_lock(n.mod), n.code)}); },
          [&](const tm::Up& n) { return do_up(n.kind, eval(env, n.body)); },
          [&](const tm::Down& n) {
            Value v = eval(env, n.body);
            return make_value(VDownWrap{n.kind ? *n.kind : kind_of_value(v), v});
          },
          [&](const tm::CrispJ& n) {
            return do_crisp_j(n.mod, TyClosure{env, n.motive}, TmClosure{env, n.refl_case},
                              eval(env.push_lock(n.mod), n.proof));
          },
          [&](const tm::Ann& n) { return eval(env, n.term); },
      },
      t->node);
}

VTy Nbe::eval_ty(const Env& env, const Ty& a) const {
  return std::visit(
      overloaded{
          [&](const ty::Pi& n) {
            return make_value(VPi{n.mod, eval_ty(env.push_lock(n.mod), n.dom), TyClosure{env, n.cod}});
          },
          [&](const ty::Sig& n) { return make_value(VSig{eval_ty(env, n.fst), TyClosure{env, n.snd}}); },
          [&](const ty::Bool&) { return make_value(VBool{}); },
          [&](const ty::Id& n) {
            return make_value(VId{eval_ty(env, n.type), eval(env, n.lhs), eval(env, n.rhs)});
          },
          [&](const ty::Mod& n) { return make_value(VMod{n.mod, eval_ty(env.push_lock(n.mod), n.body)}); },
          [&](const ty::Uni&) { return make_value(VUni{}); },
          [&](const ty::Dec& n) { return make_value(VDec{eval(env, n.code)}); },
      },
      a->node);
}

Value Nbe::inst(const TmClosure& c, const Value& v, const Modality& mu) const {
  return eval(c.env.push_val(v, mu), c.body);
}

VTy Nbe::inst(const TyClosure& c, const Value& v, const Modality& mu) const {
  if (!c.body) throw ImpossibleByTyping("missing motive");
  return eval_ty(c.env.push_val(v, mu), c.body);
}

VTy Nbe::inst3(const TyClosure& c, const Value& x, const Value& y, const Value& p, const Modality& mu) const {
  if (!c.body) throw ImpossibleByTyping("missing motive");
  return eval_ty(c.env.push_val(x, mu).push_val(y, mu).push_val(p, mu), c.body);
}

Value Nbe::do_app(const Modality& mu, const Value& f, const Value& a) const {
  if (auto* lam = std::get_if<VLam>(&f->node)) return inst(lam->body, a, mu);
  if (auto* n = std::get_if<VNeutral>(&f->node)) {
    if (auto* pi = std::get_if<VPi>(&n->type->node))
      return make_value(VNeutral{inst(pi->cod, a, pi->mod), extend(n->ne, FApp{mu, a, pi->dom})});
  }
  throw ImpossibleByTyping("application of a non-function");
}

Value Nbe::do_fst(const Value& p) const {
  if (auto* pair = std::get_if<VPair>(&p->node)) return pair->fst;
  if (auto* n = std::get_if<VNeutral>(&p->node)) {
    if (auto* sig = std::get_if<VSig>(&n->type->node)) return make_value(VNeutral{sig->fst, extend(n->ne, FFst{})});
  }
  throw ImpossibleByTyping("projection from a non-pair");
}

Value Nbe::do_snd(const Value& p) const {
  if (auto* pair = std::get_if<VPair>(&p->node)) return pair->snd;
  if (auto* n = std::get_if<VNeutral>(&p->node)) {
    if (auto* sig = std::get_if<VSig>(&n->type->node)) {
      VTy b = inst(sig->snd, do_fst(p), th_.id_mod(sig->snd.env.mode()));
      return make_value(VNeutral{b, extend(n->ne, FSnd{})});
    }
  }
  throw ImpossibleByTyping("projection from a non-pair");
}

Value Nbe::do_if(const TyClosure& motive, const Value& t, const Value& f, const Value& b) const {
  if (std::holds_alternative<VTrue>(b->node)) return t;
  if (std::holds_alternative<VFalse>(b->node)) return f;
  if (auto* n = std::get_if<VNeutral>(&b->node))
    return make_value(
        VNeutral{inst(motive, b, th_.id_mod(motive.env.mode())), extend(n->ne, FIf{motive, t, f})});
  throw ImpossibleByTyping("if on a non-boolean");
}

Value Nbe::do_j(const TyClosure& motive, const TmClosure& refl_case, const Value& p) const {
  Modality id = th_.id_mod(refl_case.env.mode());
  if (auto* r = std::get_if<VRefl>(&p->node)) return inst(refl_case, r->value, id);
  if (auto* n = std::get_if<VNeutral>(&p->node)) {
    if (auto* idt = std::get_if<VId>(&n->type->node))
      return make_value(VNeutral{inst3(motive, idt->lhs, idt->rhs, p, id),
                                 extend(n->ne, FJ{idt->type, motive, refl_case})});
  }
  throw ImpossibleByTyping("J on a non-path");
}

Value Nbe::do_crisp_j(const Modality& mu, const TyClosure& motive, const TmClosure& refl_case,
                      const Value& p) const {
  if (auto* r = std::get_if<VRefl>(&p->node)) return inst(refl_case, r->value, mu);
  if (auto* n = std::get_if<VNeutral>(&p->node)) {
    if (auto* idt = std::get_if<VId>(&n->type->node))
      return make_value(VNeutral{inst3(motive, idt->lhs, idt->rhs, p, mu),
                                 extend(n->ne, FCrispJ{mu, idt->type, motive, refl_case})});
  }
  throw ImpossibleByTyping("crisp J on a non-path");
}

Value Nbe::do_letmod(const Modality& frame, const Modality& main, const TyClosure& motive, const Value& scrut,
                     const TmClosure& body) const {
  if (auto* box = std::get_if<VMkBox>(&scrut->node)) return inst(body, box->body, th_.compose_mod(frame, main));
  if (auto* n = std::get_if<VNeutral>(&scrut->node)) {
    if (auto* m = std::get_if<VMod>(&n->type->node))
      return make_value(
          VNeutral{inst(motive, scrut, frame), extend(n->ne, FLetMod{frame, main, m->body, motive, body})});
  }
  throw ImpossibleByTyping("let mod on a non-box");
}

VTy Nbe::decode_code(const Value& code) const {
  return std::visit(
      overloaded{
          [&](const VPiCode& c) {
            return make_value(VPi{c.mod, make_value(VDec{c.dom}),
                                  TyClosure{c.cod.env, make_ty(ty::Dec{c.cod.body})}});
          },
          [&](const VSigCode& c) {
            return make_value(VSig{make_value(VDec{c.fst}), TyClosure{c.snd.env, make_ty(ty::Dec{c.snd.body})}});
          },
          [&](const VBoolCode&) { return make_value(VBool{}); },
          [&](const VModCode& c) { return make_value(VMod{c.mod, make_value(VDec{c.code})}); },
          [&](const auto&) -> VTy { throw ImpossibleByTyping("up at a neutral code"); },
      },
      code->node);
}

Value Nbe::do_up(std::optional<CodeKind> kind, const Value& v) const {
  if (auto* w = std::get_if<VDownWrap>(&v->node)) {
    if (kind && *kind != w->kind) throw ImpossibleByTyping("up/down kind mismatch");
    return w->body;
  }
  if (auto* n = std::get_if<VNeutral>(&v->node)) {
    if (auto* dec = std::get_if<VDec>(&n->type->node)) {
      auto k = code_kind_of(dec->code);
      if (!k || (kind && *kind != *k)) throw ImpossibleByTyping("up at a mismatched code");
      return make_value(VNeutral{decode_code(dec->code), extend(n->ne, FUp{*k})});
    }
  }
  throw ImpossibleByTyping("up of a value outside a decoded universe");
}

// ---- keys -----------------------------------------------------------------

Value Nbe::val_restrict(const Value& v, const Cell& alpha) const {
  return val_restrict(v, alpha, th_.id_mod(alpha.dom.dom));
}

Neutral Nbe::restrict_ne(const Neutral& ne, const Cell& alpha, const Modality& xi) const {
  Neutral out = ne;
  Modality cur = xi;
  for (std::size_t i = out.frames.size(); i-- > 0;) {
    auto key = [&](const auto& c) { return std::decay_t<decltype(c)>{c.env.push_key(alpha, cur), c.body}; };
    auto& f = out.frames[i];
    std::visit(overloaded{
                   [&](FApp& a) {
                     Modality under = th_.compose_mod(cur, a.mod);
                     a.arg = val_restrict(a.arg, alpha, under);
                     a.dom = val_restrict(a.dom, alpha, under);
                   },
                   [&](FFst&) {},
                   [&](FSnd&) {},
                   [&](FIf& a) {
                     a.motive = key(a.motive);
                     a.then_case = val_restrict(a.then_case, alpha, cur);
                     a.else_case = val_restrict(a.else_case, alpha, cur);
                   },
                   [&](FJ& a) {
                     a.type = val_restrict(a.type, alpha, cur);
                     a.motive = key(a.motive);
                     a.refl_case = key(a.refl_case);
                   },
                   [&](FCrispJ& a) {
                     a.type = val_restrict(a.type, alpha, th_.compose_mod(cur, a.mod));
                     a.motive = key(a.motive);
                     a.refl_case = key(a.refl_case);
                     cur = th_.compose_mod(cur, a.mod);
                   },
                   [&](FLetMod& a) {
                     Modality inner = th_.compose_mod(cur, a.frame);
                     a.type = val_restrict(a.type, alpha, th_.compose_mod(inner, a.main));
                     a.motive = key(a.motive);
                     a.body = key(a.body);
                     cur = inner;
                   },
                   [&](FUp&) {},
               },
               f);
  }
  auto lambda = th_.right_divide(out.cell.cod, th_.compose_mod(alpha.dom, cur));
  if (!lambda)
    throw CellError("key " + th_.format_cell(alpha) + " does not fit the locks of variable level " +
                    std::to_string(out.level));
  Cell whisker = th_.hcomp(th_.hcomp(th_.id_cell(*lambda), alpha), th_.id_cell(cur));
  out.cell = th_.vcomp(whisker, out.cell);
  return out;
}

Value Nbe::val_restrict(const Value& v, const Cell& alpha, const Modality& xi) const {
  if (th_.is_identity_cell(alpha)) return v;
  auto r = [&](const Value& w) { return val_restrict(w, alpha, xi); };
  auto under = [&](const Value& w, const Modality& mu) { return val_restrict(w, alpha, th_.compose_mod(xi, mu)); };
  auto key = [&](const auto& c) { return std::decay_t<decltype(c)>{c.env.push_key(alpha, xi), c.body}; };
  return std::visit(
      overloaded{
          [&](const VLam& n) { return make_value(VLam{key(n.body)}); },
          [&](const VPair& n) { return make_value(VPair{r(n.fst), r(n.snd)}); },
          [&](const VTrue&) { return v; },
          [&](const VFalse&) { return v; },
          [&](const VRefl& n) { return make_value(VRefl{r(n.value)}); },
          [&](const VMkBox& n) { return make_value(VMkBox{n.mod, under(n.body, n.mod)}); },
          [&](const VDownWrap& n) { return make_value(VDownWrap{n.kind, r(n.body)}); },
          [&](const VNeutral& n) { return make_value(VNeutral{r(n.type), restrict_ne(n.ne, alpha, xi)}); },
          [&](const VPiCode& n) { return make_value(VPiCode{n.mod, under(n.dom, n.mod), key(n.cod)}); },
          [&](const VSigCode& n) { return make_value(VSigCode{r(n.fst), key(n.snd)}); },
          [&](const VBoolCode&) { return v; },
          [&](const VModCode& n) { return make_value(VModCode{n.mod, under(n.code, n.mod)}); },
          [&](const VPi& n) { return make_value(VPi{n.mod, under(n.dom, n.mod), key(n.cod)}); },
          [&](const VSig& n) { return make_value(VSig{r(n.fst), key(n.snd)}); },
          [&](const VBool&) { return v; },
          [&](const VId& n) { return make_value(VId{r(n.type), r(n.lhs), r(n.rhs)}); },
          [&](const VMod& n) { return make_value(VMod{n.mod, under(n.body, n.mod)}); },
          [&](const VUni&) { return v; },
          [&](const VDec& n) { return make_value(VDec{r(n.code)}); },
      },
      v->node);
}

// ---- readback -------------------------------------------------------------

Value Nbe::fresh(std::size_t level, const VTy& a, const Modality& mu) const {
  return reflect(a, Neutral{level, th_.id_cell(mu), {}});
}

// η-expansion is performed lazily by reify, so reflection is just the wrapper.
Value Nbe::reflect(const VTy& a, Neutral ne) const { return make_value(VNeutral{a, std::move(ne)}); }

Nf Nbe::reify(std::size_t depth, const VTy& a, const Value& v) const {
  auto inj = [&]() -> Nf {
    if (auto* n = std::get_if<VNeutral>(&v->node)) return make_nf(NfInj{reify_ne(depth, n->ne)});
    throw ImpossibleByTyping("value does not inhabit its type");
  };
  return std::visit(
      overloaded{
          [&](const VPi& p) {
            Value x = fresh(depth, p.dom, p.mod);
            return make_nf(NfLam{reify(depth + 1, inst(p.cod, x, p.mod), do_app(p.mod, v, x))});
          },
          [&](const VSig& s) {
            Value f = do_fst(v);
            return make_nf(NfPair{reify(depth, s.fst, f),
                                  reify(depth, inst(s.snd, f, th_.id_mod(s.snd.env.mode())), do_snd(v))});
          },
          [&](const VBool&) {
            if (std::holds_alternative<VTrue>(v->node)) return make_nf(NfTrue{});
            if (std::holds_alternative<VFalse>(v->node)) return make_nf(NfFalse{});
            return inj();
          },
          [&](const VId& i) {
            if (auto* r = std::get_if<VRefl>(&v->node)) return make_nf(NfRefl{reify(depth, i.type, r->value)});
            return inj();
          },
          [&](const VMod& m) {
            if (auto* b = std::get_if<VMkBox>(&v->node)) return make_nf(NfMkBox{m.mod, reify(depth, m.body, b->body)});
            return inj();
          },
          [&](const VUni&) {
            VTy uni = a;
            return std::visit(
                overloaded{
                    [&](const VPiCode& c) {
                      Value x = fresh(depth, make_value(VDec{c.dom}), c.mod);
                      return make_nf(NfPiCode{c.mod, reify(depth, uni, c.dom), reify(depth + 1, uni, inst(c.cod, x, c.mod))});
                    },
                    [&](const VSigCode& c) {
                      Modality id = th_.id_mod(c.snd.env.mode());
                      Value x = fresh(depth, make_value(VDec{c.fst}), id);
                      return make_nf(NfSigCode{reify(depth, uni, c.fst), reify(depth + 1, uni, inst(c.snd, x, id))});
                    },
                    [&](const VBoolCode&) { return make_nf(NfBoolCode{}); },
                    [&](const VModCode& c) { return make_nf(NfModCode{c.mod, reify(depth, uni, c.code)}); },
                    [&](const auto&) { return inj(); },
                },
                v->node);
          },
          [&](const VDec& d) {
            if (auto k = code_kind_of(d.code))
              return make_nf(NfDown{*k, reify(depth, decode_code(d.code), do_up(*k, v))});
            return inj();
          },
          [&](const auto&) -> Nf { throw ImpossibleByTyping("reify at a non-type"); },
      },
      a->node);
}

NfTy Nbe::reify_ty(std::size_t depth, const VTy& a) const {
  return std::visit(
      overloaded{
          [&](const VPi& p) {
            Value x = fresh(depth, p.dom, p.mod);
            return make_nfty(NfPi{p.mod, reify_ty(depth, p.dom), reify_ty(depth + 1, inst(p.cod, x, p.mod))});
          },
          [&](const VSig& s) {
            Modality id = th_.id_mod(s.snd.env.mode());
            Value x = fresh(depth, s.fst, id);
            return make_nfty(NfSig{reify_ty(depth, s.fst), reify_ty(depth + 1, inst(s.snd, x, id))});
          },
          [&](const VBool&) { return make_nfty(NfBool{}); },
          [&](const VId& i) {
            return make_nfty(NfId{reify_ty(depth, i.type), reify(depth, i.type, i.lhs), reify(depth, i.type, i.rhs)});
          },
          [&](const VMod& m) { return make_nfty(NfMod{m.mod, reify_ty(depth, m.body)}); },
          [&](const VUni&) { return make_nfty(NfUni{}); },
          [&](const VDec& d) { return make_nfty(NfDec{reify(depth, make_value(VUni{}), d.code)}); },
          [&](const auto&) -> NfTy { throw ImpossibleByTyping("reify_ty of a non-type"); },
      },
      a->node);
}

Ne Nbe::reify_ne(std::size_t depth, const Neutral& ne) const {
  if (ne.level >= depth) throw ImpossibleByTyping("neutral refers to an unbound level");
  Ne e = make_ne(NeVar{depth - 1 - ne.level, ne.cell});
  for (const auto& frame : ne.frames) {
    e = std::visit(
        overloaded{
            [&](const FApp& f) { return make_ne(NeApp{f.mod, e, reify(depth, f.dom, f.arg)}); },
            [&](const FFst&) { return make_ne(NeFst{e}); },
            [&](const FSnd&) { return make_ne(NeSnd{e}); },
            [&](const FIf& f) {
              Modality id = th_.id_mod(f.motive.env.mode());
              VTy boolean = make_value(VBool{});
              NfTy motive = reify_ty(depth + 1, inst(f.motive, fresh(depth, boolean, id), id));
              Nf t = reify(depth, inst(f.motive, make_value(VTrue{}), id), f.then_case);
              Nf el = reify(depth, inst(f.motive, make_value(VFalse{}), id), f.else_case);
              return make_ne(NeIf{motive, e, t, el});
            },
            [&](const FJ& f) {
              Modality id = th_.id_mod(f.motive.env.mode());
              Value x = fresh(depth, f.type, id);
              Value y = fresh(depth + 1, f.type, id);
              Value q = fresh(depth + 2, make_value(VId{f.type, x, y}), id);
              NfTy motive = reify_ty(depth + 3, inst3(f.motive, x, y, q, id));
              Value z = fresh(depth, f.type, id);
              Nf refl = reify(depth + 1, inst3(f.motive, z, z, make_value(VRefl{z}), id), inst(f.refl_case, z, id));
              return make_ne(NeJ{motive, refl, e});
            },
            [&](const FCrispJ& f) {
              Value x = fresh(depth, f.type, f.mod);
              Value y = fresh(depth + 1, f.type, f.mod);
              Value q = fresh(depth + 2, make_value(VId{f.type, x, y}), f.mod);
              NfTy motive = reify_ty(depth + 3, inst3(f.motive, x, y, q, f.mod));
              Value z = fresh(depth, f.type, f.mod);
              Nf refl =
                  reify(depth + 1, inst3(f.motive, z, z, make_value(VRefl{z}), f.mod), inst(f.refl_case, z, f.mod));
              return make_ne(NeCrispJ{f.mod, motive, refl, e});
            },
            [&](const FLetMod& f) {
              Modality both = th_.compose_mod(f.frame, f.main);
              Value x = fresh(depth, make_value(VMod{f.main, f.type}), f.frame);
              NfTy motive = reify_ty(depth + 1, inst(f.motive, x, f.frame));
              Value y = fresh(depth, f.type, both);
              VTy body_ty = inst(f.motive, make_value(VMkBox{f.main, y}), f.frame);
              Nf body = reify(depth + 1, body_ty, inst(f.body, y, both));
              return make_ne(NeLetMod{f.frame, f.main, motive, e, body});
            },
            [&](const FUp& f) { return make_ne(NeUp{f.kind, e}); },
        },
        frame);
  }
  return e;
}

// ---- entry points ---------------------------------------------------------

Env Nbe::init_env(const Ctx& ctx) const {
  Env env(ctx.base_mode());
  std::size_t level = 0;
  for (const auto& e : ctx.entries()) {
    if (e.kind == CtxEntry::Kind::lock) {
      env = env.push_lock(e.mod);
    } else {
      VTy a = eval_ty(env.push_lock(e.mod), e.type);
      env = env.push_val(fresh(level++, a, e.mod), e.mod);
    }
  }
  return env;
}

Nf Nbe::normalize(const Ctx& ctx, const Ty& a, const Tm& m) const {
  Env env = init_env(ctx);
  return reify(ctx.binder_count(), eval_ty(env, a), eval(env, m));
}

NfTy Nbe::normalize_ty(const Ctx& ctx, const Ty& a) const {
  return reify_ty(ctx.binder_count(), eval_ty(init_env(ctx), a));
}

}  // namespace mtt
