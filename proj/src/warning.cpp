#include "dgue/warning.hpp"

#include <iostream>
#include <mutex>

namespace dgue {

namespace {
std::mutex g_mutex;
std::function<void(const std::string&)> g_handler;
}  // namespace

void warn(const std::string& message) {
    std::lock_guard lock(g_mutex);
    if (g_handler)
        g_handler(message);
    else
        std::cerr << "warning: " << message << '\n';
}

std::function<void(const std::string&)> set_warning_handler(std::function<void(const std::string&)> handler) {
    std::lock_guard lock(g_mutex);
    auto previous = std::move(g_handler);
    g_handler = std::move(handler);
    return previous;
}

}  // namespace dgue
