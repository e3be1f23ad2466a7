#include "echobench/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace echobench {

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const KernelOps& active_ops() {
    static const KernelOps* selected = [] {
        const char* env = std::getenv("ECHOBENCH_KERNELS");
        if (env) {
            if (std::strcmp(env, "scalar") == 0) return &scalar_ops();
            if (std::strcmp(env, "avx2") == 0 && avx2_available()) return &avx2_ops();
        }
        return avx2_available() ? &avx2_ops() : &scalar_ops();
    }();
    return *selected;
}

}  // namespace echobench
