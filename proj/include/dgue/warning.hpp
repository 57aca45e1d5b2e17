#pragma once

#include <functional>
#include <string>

namespace dgue {

/// Non-fatal numerical notices (e.g. clamped roundoff). Default handler writes to stderr.
void warn(const std::string& message);
/// Replace the handler; pass nullptr to restore the default. Returns the previous handler.
std::function<void(const std::string&)> set_warning_handler(std::function<void(const std::string&)> handler);

}  // namespace dgue
