#include "polyspec/parallel.hpp"

#include <cstdlib>
#include <string>

namespace polyspec {

int default_thread_count() {
    const char* env = std::getenv("POLYSPEC_THREADS");
    if (!env || !*env) return 1;
    try {
        const int n = std::stoi(env);
        return n >= 1 ? n : 1;
    } catch (const std::exception&) {
        return 1;
    }
}

}  // namespace polyspec
