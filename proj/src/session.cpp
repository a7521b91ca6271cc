// SPDX-License-Identifier: Apache-2.0
#include "wed/session.hpp"

#include <stdexcept>

namespace wed {

namespace {

std::shared_ptr<const FpSpace> space_for(const SessionOptions& opt) {
  return opt.seed ? std::make_shared<const FpSpace>(*opt.seed) : FpSpace::global();
}

}  // namespace

Session::Session(const Str& x, const Str& y, int k, const WeightTable& w, SessionOptions opt)
    : k_(k), w_(cap_weights(w, k)), x_(x, space_for(opt)), y_(y, x_.space()), dw_(x, k, w, opt.dyn) {
  for (Symbol c : y)
    if (c < 0 || c >= w.sigma()) throw std::invalid_argument("session: symbol of Y out of range");
}

void Session::apply(Side target, const Edit& e) {
  if (e.op != Op::Del && (e.sym < 0 || e.sym >= w_.sigma())) throw std::invalid_argument("session: symbol out of range");
  if (target == Side::X) {
    FRope nx = x_.edited(e);  // validates the position before the engine sees it
    dw_.edit(e);
    x_ = std::move(nx);
  } else {
    y_ = y_.edited(e);
  }
  fresh_ = have_alignment_ = false;
}

Weight Session::update(Side target, const Edit& e) {
  apply(target, e);
  return report();
}

void Session::refresh() {
  if (fresh_) return;
  auto lv = lv_ed(x_, y_, k_);
  far_ = !lv;
  hint_ = lv ? rope_script(x_, y_, lv->alignment) : EditScript{};
  value_ = far_ ? INF : dw_.query(hint_, false).value;
  alignment_.reset();
  fresh_ = true;
  have_alignment_ = far_ || is_inf(value_);
}

Weight Session::report() {
  refresh();
  return value_;
}

std::optional<Breakpoints> Session::alignment() {
  refresh();
  if (!have_alignment_) {
    alignment_ = dw_.query(hint_, true).alignment;
    have_alignment_ = true;
  }
  return alignment_;
}

}  // namespace wed
