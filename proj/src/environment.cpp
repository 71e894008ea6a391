#include "purcell/environment.hpp"

namespace purcell {

GreensModel::GreensModel(std::optional<HomogeneousGreens> bg, std::optional<StructuredModel> st)
    : background_(std::move(bg)), structured_(std::move(st)) {}

GreensModel GreensModel::homogeneous(double n) { return {HomogeneousGreens(n), std::nullopt}; }

GreensModel GreensModel::structured(StructuredModel model) { return {std::nullopt, std::move(model)}; }

GreensModel GreensModel::composite(double background_index, StructuredModel model) {
    return {HomogeneousGreens(background_index), std::move(model)};
}

double GreensModel::max_index() const { return background_ ? background_->index() : 1.0; }

double cdos(const GreensModel& env, const PolarizedPoint& a, const PolarizedPoint& b, Wavenumber k) {
    double total = 0.0;
    if (env.background())
        total += cdos(*env.background(), a, b, k);
    if (env.structured_part()) {
        total += std::visit(
            [&](const auto& m) {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, ModeSet>)
                    return cdos_modal(m, a, b, k);
                else
                    return cdos_qnm(m, a, b, k);
            },
            *env.structured_part());
    }
    return total;
}

} // namespace purcell
