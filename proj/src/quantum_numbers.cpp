#include "mesoatom/quantum_numbers.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace mesoatom {

void QuantumNumbers::validate() const {
    if (n < 0) throw DomainError("radial number n must be >= 0");
    if (two_l < std::llabs(two_q) || (two_l - std::llabs(two_q)) % 2 != 0)
        throw DomainError("l must be |q|, |q|+1, ...");
    if (std::llabs(two_m) > two_l || (two_l - two_m) % 2 != 0)
        throw DomainError("m must be -l, -l+1, ..., l");
}

double kappa(long long two_l, long long two_q, double z_alpha) {
    const double lph = 0.5 * (static_cast<double>(two_l) + 1.0); // l + 1/2
    const double q = 0.5 * static_cast<double>(two_q);
    const double radicand = lph * lph - z_alpha * z_alpha - q * q;
    if (!(radicand > 0.0))
        throw DomainError("kappa radicand <= 0: preconditions l >= |q|, Z alpha < 1/2 violated");
    return std::sqrt(radicand);
}

double principal_number(long long n, double kappa) {
    return static_cast<double>(n) + kappa + 0.5;
}

SpectrumBounds spectrum_caps(double mu, double z_alpha) {
    if (!(z_alpha < 0.5)) throw CouplingTooLarge("Z alpha must be < 1/2");
    if (!(mu >= 0.0)) throw DomainError("mu must be >= 0");
    SpectrumBounds b;
    const double root = std::sqrt(mu * mu + 1.0) - z_alpha;
    b.n0_cap = std::sqrt(z_alpha) * std::sqrt(std::max(root, 0.0));
    if (b.n0_cap <= 0.5) {
        b.q0_cap = 0.0;
        b.empty = true;
    } else {
        b.q0_cap = b.n0_cap * b.n0_cap - b.n0_cap + z_alpha * z_alpha;
        b.empty = false;
    }
    return b;
}

double l0_cap(const SpectrumBounds& b, long long two_q) {
    if (b.empty) return -1.0;
    const double aq = 0.5 * std::abs(static_cast<double>(two_q));
    const double q2 = aq * aq;
    // solve l(l+1) - q^2 < q0 for the largest admissible l = |q| + j
    const double l_real = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * (q2 + b.q0_cap)));
    long long j = static_cast<long long>(std::floor(l_real - aq)) + 2;
    auto admissible = [&](long long jj) {
        if (jj < 0) return false;
        const double l = aq + static_cast<double>(jj);
        return l * (l + 1.0) - q2 < b.q0_cap;
    };
    while (j >= 0 && !admissible(j)) --j;
    if (j < 0) return -1.0;
    return aq + static_cast<double>(j);
}

long long n0_cap(const SpectrumBounds& b, long long two_l, long long two_q, double z_alpha) {
    if (b.empty) return -1;
    const double room = b.n0_cap - kappa(two_l, two_q, z_alpha) - 0.5;
    if (!(room > 0.0)) return -1;
    return static_cast<long long>(std::ceil(room)) - 1;
}

namespace {

struct ChannelEntry {
    double N;
    long long two_l;
    long long n;
    double kap;
    bool operator>(const ChannelEntry& o) const {
        if (N != o.N) return N > o.N;
        return two_l > o.two_l;
    }
};

} // namespace

Enumeration enumerate_levels(const DimensionlessParams& params, std::size_t max_count) {
    params.validate();
    if (max_count < 1) throw DomainError("max_count must be >= 1");

    Enumeration out;
    const SpectrumBounds caps = spectrum_caps(params.mu, params.z_alpha);
    if (caps.empty) return out;

    const long long abs_two_q = std::llabs(params.two_q);
    std::priority_queue<ChannelEntry, std::vector<ChannelEntry>, std::greater<ChannelEntry>> heap;

    long long next_two_l = abs_two_q;
    bool channels_left = true;
    auto channel_base = [&](long long two_l) {
        return ChannelEntry{principal_number(0, kappa(two_l, params.two_q, params.z_alpha)),
                            two_l, 0, kappa(two_l, params.two_q, params.z_alpha)};
    };
    auto seed_channels = [&]() {
        // pull in every channel whose n=0 entry could precede the heap top
        while (channels_left) {
            ChannelEntry base = channel_base(next_two_l);
            if (!(base.N < caps.n0_cap)) {
                channels_left = false; // kappa grows with l, so no later channel opens
                break;
            }
            if (!heap.empty() && base.N > heap.top().N) break;
            heap.push(base);
            next_two_l += 2;
        }
    };

    seed_channels();
    while (!heap.empty()) {
        seed_channels();
        const ChannelEntry top = heap.top();
        heap.pop();
        if (out.levels.size() >= max_count) {
            out.truncated = true;
            break;
        }
        QuantumNumbers qn;
        qn.n = top.n;
        qn.two_l = top.two_l;
        qn.two_m = 0;
        qn.two_q = params.two_q;
        out.levels.push_back(qn);
        const double next_N = principal_number(top.n + 1, top.kap);
        if (next_N < caps.n0_cap)
            heap.push(ChannelEntry{next_N, top.two_l, top.n + 1, top.kap});
    }
    return out;
}

} // namespace mesoatom
