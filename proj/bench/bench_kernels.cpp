// Times the OpenMP kernels against their serial reference twins and verifies
// that the two paths agree bit-for-bit.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include <omp.h>

#include "bubble/field.hpp"
#include "bubble/tuner.hpp"

using namespace bubble;

namespace {

double seconds(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

bool bitwise_equal(const std::vector<FieldSample>& a, const std::vector<FieldSample>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (std::memcmp(&a[i], &b[i], sizeof(FieldSample)) != 0) return false;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    int subdiv = 4;
    if (argc > 1) subdiv = std::atoi(argv[1]);
    if (const char* env = std::getenv("BUBBLE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
    std::printf("threads: %d, icosphere subdivisions: %d\n", omp_get_max_threads(),
                subdiv);

    const SurfaceMesh mesh = make_icosphere(1.0, subdiv);
    const QuadratureConfig quad;

    ShapeFactors parallel_factors, serial_factors;
    const double t_par =
        seconds([&] { parallel_factors = shape_factors(mesh, quad); });
    const double t_ser =
        seconds([&] { serial_factors = shape_factors_serial(mesh, quad); });
    const bool factors_match =
        parallel_factors.A_dB == serial_factors.A_dB &&
        parallel_factors.A_profile == serial_factors.A_profile;
    std::printf("shape_factors      parallel %8.3fs  serial %8.3fs  speedup %5.2fx  %s\n",
                t_par, t_ser, t_ser / t_par, factors_match ? "bitwise match" : "MISMATCH");

    MediumBubbleSpec spec;
    spec.rho_m = 1.0;
    spec.k_m = 1.0;
    spec.delta = 0.01;
    const DerivedConstants constants = derive_constants(spec, parallel_factors);
    const SurfaceMesh bubble_mesh = scale_translate(mesh, spec.delta, spec.z);

    IncidentPulse pulse;
    pulse.x0 = {3, 0, 0};

    FieldRequest request;
    for (int i = 0; i < 64; ++i)
        request.points.push_back(Vec3{0.4 + 0.05 * (i % 8), 0.1 * (i / 8), 0.2});
    request.t0 = 2.0;
    request.t1 = 5.0;
    request.dt = 1e-3;
    request.want_decomposition = true;

    std::vector<FieldSample> parallel_field, serial_field;
    const double f_par = seconds([&] {
        parallel_field = evaluate_dominant(spec, constants, bubble_mesh, pulse, request);
    });
    const double f_ser = seconds([&] {
        serial_field =
            evaluate_dominant_serial(spec, constants, bubble_mesh, pulse, request);
    });
    const bool field_match = bitwise_equal(parallel_field, serial_field);
    std::printf("evaluate_dominant  parallel %8.3fs  serial %8.3fs  speedup %5.2fx  %s\n",
                f_par, f_ser, f_ser / f_par, field_match ? "bitwise match" : "MISMATCH");

    return (factors_match && field_match) ? 0 : 1;
}
