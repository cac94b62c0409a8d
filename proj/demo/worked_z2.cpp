// The Z/2 example phi = (2, 1) end to end: lambda matrix, spectrum,
// square roots, truncation and an orthogonal split.

#include <cstdio>

#include <godement/godement.hpp>

using namespace godement;

namespace {

void print(const char* name, const MatFun& f) {
    std::printf("%-10s (%.12f, %.12f)\n", name, f[0](0, 0).real(), f[1](0, 0).real());
}

}  // namespace

int main() {
    const GroupPtr z2 = make_group("cyclic:2");
    MatFun phi(z2, 1);
    phi[0](0, 0) = 2.0;
    phi[1](0, 0) = 1.0;

    const auto sd = spectral_decompose(build_lambda(phi));
    std::printf("eigenvalues %.12f %.12f\n", sd.eigenvalues(0), sd.eigenvalues(1));

    print("phi", phi);
    print("sqrt", sqrt_spectral(phi).psi);
    const auto it = sqrt_iterative(phi);
    print("sqrt(iter)", it.psi);
    std::printf("iterations %zu\n", it.iterations);
    print("phi_2", spectral_truncate(phi, 2.0));

    const auto [low, high] = build_orthogonal_pd_pair(phi, 2.0);
    print("low", low);
    print("high", high);
    print("low*high", convolve(low, high));
}
