#include "ruinsim/dists/heavy.hpp"

#include <sstream>

namespace ruinsim {

namespace {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;
}  // namespace

HeavyComponent::HeavyComponent(PhaseType ph) : law_(ph), ph_excess_(ph.excess()) {}

double HeavyComponent::mean() const {
  return std::visit([](const auto& d) { return d.mean(); }, law_);
}

double HeavyComponent::excess_ccdf(double u) const {
  if (ph_excess_) return ph_excess_->ccdf(u);
  return std::get<ShiftedPareto>(law_).excess_ccdf(u);
}

double HeavyComponent::excess_sample(RngStream& rng) const {
  if (ph_excess_) return ph_excess_->sample(rng);
  return std::get<ShiftedPareto>(law_).excess_sample(rng);
}

std::string HeavyComponent::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const ShiftedPareto& p) {
                   os << "pareto(a=" << p.shape() << ", b=" << p.scale() << ")";
                 },
                 [&](const PhaseType& p) { os << "phase-type(order=" << p.order() << ")"; },
             },
             law_);
  return os.str();
}

}  // namespace ruinsim
