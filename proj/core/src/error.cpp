#include "sitebias/error.hpp"

namespace sitebias {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::config: return "config";
    case ErrorKind::domain: return "domain";
    case ErrorKind::parse: return "parse";
    case ErrorKind::conflict: return "conflict";
    case ErrorKind::not_found: return "not_found";
    case ErrorKind::contract: return "contract";
    case ErrorKind::empty: return "empty";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace sitebias
