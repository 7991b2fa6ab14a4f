#pragma once

#include <sstream>
#include <string_view>

namespace pqcside::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

// Level comes from the PQCSIDE_LOG environment variable (error|warn|info|debug),
// read once. Default is warn.
Level threshold();

bool enabled(Level lvl);
void write(Level lvl, std::string_view msg);

namespace detail {
template <typename... Args>
void emit(Level lvl, Args&&... args) {
    if (!enabled(lvl)) return;
    std::ostringstream os;
    (os << ... << args);
    write(lvl, os.str());
}
}  // namespace detail

template <typename... Args>
void error(Args&&... args) {
    detail::emit(Level::error, std::forward<Args>(args)...);
}
template <typename... Args>
void warn(Args&&... args) {
    detail::emit(Level::warn, std::forward<Args>(args)...);
}
template <typename... Args>
void info(Args&&... args) {
    detail::emit(Level::info, std::forward<Args>(args)...);
}
template <typename... Args>
void debug(Args&&... args) {
    detail::emit(Level::debug, std::forward<Args>(args)...);
}

}  // namespace pqcside::log
