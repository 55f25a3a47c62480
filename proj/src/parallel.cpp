#include "kuperberg/parallel.hpp"

namespace kup {

int default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : int(n);
}

}  // namespace kup
