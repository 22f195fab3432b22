#include "ferris/errors.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace ferris {

namespace {
std::mutex g_warn_mutex;
WarnHandler g_warn_handler;
}  // namespace

WarnHandler set_warn_handler(WarnHandler handler) {
  std::lock_guard<std::mutex> lock(g_warn_mutex);
  WarnHandler prev = std::move(g_warn_handler);
  g_warn_handler = std::move(handler);
  return prev;
}

void warn(const std::string& msg) {
  std::lock_guard<std::mutex> lock(g_warn_mutex);
  if (g_warn_handler)
    g_warn_handler(msg);
  else
    std::cerr << "ferris: warning: " << msg << "\n";
}

}  // namespace ferris
