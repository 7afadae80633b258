#include "ffil/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace ffil::kernels {
namespace {

bool cpu_supported(const Backend* b) {
    if (b == nullptr) return false;
#if defined(__x86_64__)
    if (std::string_view(b->name) == "avx2") {
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    }
#endif
    return true;  // scalar and (baseline-aarch64) neon
}

const Backend* find(std::string_view name) {
    if (name == "scalar") return &scalar_backend();
    if (name == "avx2" && cpu_supported(avx2_backend())) return avx2_backend();
    if (name == "neon" && cpu_supported(neon_backend())) return neon_backend();
    return nullptr;
}

const Backend* pick_default() {
    if (const char* env = std::getenv("FFIL_KERNELS")) {
        if (const Backend* b = find(env)) return b;
    }
    if (cpu_supported(avx2_backend())) return avx2_backend();
    if (cpu_supported(neon_backend())) return neon_backend();
    return &scalar_backend();
}

std::atomic<const Backend*> g_active{nullptr};

}  // namespace

const Backend& active() {
    const Backend* b = g_active.load(std::memory_order_acquire);
    if (b == nullptr) {
        b = pick_default();
        g_active.store(b, std::memory_order_release);
    }
    return *b;
}

bool select(std::string_view name) {
    const Backend* b = find(name);
    if (b == nullptr) return false;
    g_active.store(b, std::memory_order_release);
    return true;
}

std::vector<const Backend*> supported_backends() {
    std::vector<const Backend*> out{&scalar_backend()};
    if (cpu_supported(avx2_backend())) out.push_back(avx2_backend());
    if (cpu_supported(neon_backend())) out.push_back(neon_backend());
    return out;
}

}  // namespace ffil::kernels
