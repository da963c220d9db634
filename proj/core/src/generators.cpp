#include <cmath>

#include "cohmark/envmodels.hpp"
#include "cohmark/lindblad.hpp"

namespace cohmark {

namespace {

std::function<SquareMatrix(double)> fixed(SquareMatrix m) {
    return [m](double) { return m; };
}

SquareMatrix two_qubit_hamiltonian(const SystemHamiltonian& h) {
    std::vector<double> e(4);
    for (std::size_t m = 0; m < 4; ++m) {
        const int z1 = (m & 2u) ? -1 : 1;
        const int z2 = (m & 1u) ? -1 : 1;
        e[m] = 0.5 * (h.eps1 * z1 + h.eps2 * z2 + h.coupling * z1 * z2);
    }
    return SquareMatrix::diagonal(std::span<const double>(e));
}

}  // namespace

TimeLocalGenerator constant_dephasing_generator(double rate) {
    TimeLocalGenerator gen;
    gen.dim = 2;
    gen.terms.push_back({[rate](double) { return rate; }, fixed(ops::sigma_z())});
    return gen;
}

TimeLocalGenerator generator_for(const ChannelSpec& spec) {
    spec.validate();
    TimeLocalGenerator gen;
    gen.dim = spec.dim();
    const double s = spec.s;
    auto deph_rate = [s](double t) { return gamma_dephasing_zero_t(t, s); };
    const SquareMatrix id2 = SquareMatrix::identity(2);

    switch (spec.kind) {
    case ChannelKind::deph1q:
        gen.terms.push_back({deph_rate, fixed(ops::sigma_z())});
        break;
    case ChannelKind::diss1q: {
        // G'/G = -i omega(t) - gamma(t)/2
        const double ratio = spec.ratio;
        const double delta = spec.detuning();
        auto log_derivative = [ratio, delta](double t) {
            return g_lorentzian_derivative(t, ratio, delta) / g_lorentzian(t, ratio, delta);
        };
        gen.hamiltonian = [log_derivative](double t) {
            SquareMatrix h(2);
            h(1, 1) = Complex(-log_derivative(t).imag());
            return h;
        };
        gen.terms.push_back({[log_derivative](double t) { return -2.0 * log_derivative(t).real(); },
                             fixed(ops::lowering())});
        break;
    }
    case ChannelKind::deph2q_common:
    case ChannelKind::deph2q_independent: {
        if (!spec.hamiltonian.is_zero()) gen.hamiltonian = fixed(two_qubit_hamiltonian(spec.hamiltonian));
        const SquareMatrix z1 = kron(ops::sigma_z(), id2);
        const SquareMatrix z2 = kron(id2, ops::sigma_z());
        if (spec.kind == ChannelKind::deph2q_common) {
            gen.terms.push_back({deph_rate, fixed(z1 + z2)});
        } else {
            gen.terms.push_back({deph_rate, fixed(z1)});
            gen.terms.push_back({deph_rate, fixed(z2)});
        }
        break;
    }
    case ChannelKind::diss2q_common: {
        const double ratio = spec.ratio;
        const double b = spec.b;
        const SquareMatrix l1 = kron(ops::lowering(), id2);
        const SquareMatrix l2 = kron(id2, ops::lowering());
        const Complex norm(1.0 / std::sqrt(2.0));
        auto rate = [ratio](double t) { return gamma_twoqubit_diss(t, ratio); };
        gen.terms.push_back({[rate, b](double t) { return (1.0 + b) * rate(t); }, fixed((l1 + l2) * norm)});
        gen.terms.push_back({[rate, b](double t) { return (1.0 - b) * rate(t); }, fixed((l1 - l2) * norm)});
        gen.working_basis = spec.basis();
        gen.poles = PoleStructure{[ratio](double t) { return twoqubit_rate_denominator(t, ratio); }, rate, 1e-3};
        break;
    }
    }
    return gen;
}

}  // namespace cohmark
