#include "spinqec/parallel.hpp"

#include <atomic>

namespace spinqec {

namespace {
std::atomic<Exec> g_default{
#ifdef _OPENMP
    Exec::Par
#else
    Exec::Seq
#endif
};
}  // namespace

Exec default_exec() { return g_default.load(std::memory_order_relaxed); }

void set_default_exec(Exec e) { g_default.store(e, std::memory_order_relaxed); }

}  // namespace spinqec
