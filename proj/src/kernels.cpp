#include "mval/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace mval::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(MVAL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Backend* pick_default() {
    if (const char* env = std::getenv("MVAL_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return &detail::scalar_backend;
#if defined(MVAL_HAVE_AVX2)
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return &detail::avx2_backend;
#endif
        // Unknown or unsupported request: fall through to auto-detection
        // rather than aborting; the env var is a tuning knob, not a contract.
    }
#if defined(MVAL_HAVE_AVX2)
    if (cpu_has_avx2()) return &detail::avx2_backend;
#endif
    return &detail::scalar_backend;
}

const Backend*& current() {
    static const Backend* backend = pick_default();
    return backend;
}

} // namespace

const Backend& active() { return *current(); }

bool select(std::string_view name) {
    if (name == "scalar") {
        current() = &detail::scalar_backend;
        return true;
    }
#if defined(MVAL_HAVE_AVX2)
    if (name == "avx2" && cpu_has_avx2()) {
        current() = &detail::avx2_backend;
        return true;
    }
#endif
    return false;
}

std::vector<std::string_view> available() {
    std::vector<std::string_view> names{"scalar"};
#if defined(MVAL_HAVE_AVX2)
    if (cpu_has_avx2()) names.push_back("avx2");
#endif
    return names;
}

} // namespace mval::kernels
