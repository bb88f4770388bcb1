#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace spinneret {

enum class Errc {
    io,
    mixed_indentation,
    ragged_indent,
    index_out_of_range,
    target_not_found,
    missing_binding,
    unknown_placeholder,
    layout_mismatch,
    already_applied,
    timeout,
    key_not_found,
    already_exists,
    template_set_not_found,
    duplicate_name,
    registry_corrupt,
    unknown_project,
    invalid_name,
    invalid_manifest,
    invalid_argument,
};

inline const char *errc_name(Errc c) {
    switch (c) {
    case Errc::io: return "io";
    case Errc::mixed_indentation: return "mixed_indentation";
    case Errc::ragged_indent: return "ragged_indent";
    case Errc::index_out_of_range: return "index_out_of_range";
    case Errc::target_not_found: return "target_not_found";
    case Errc::missing_binding: return "missing_binding";
    case Errc::unknown_placeholder: return "unknown_placeholder";
    case Errc::layout_mismatch: return "layout_mismatch";
    case Errc::already_applied: return "already_applied";
    case Errc::timeout: return "timeout";
    case Errc::key_not_found: return "key_not_found";
    case Errc::already_exists: return "already_exists";
    case Errc::template_set_not_found: return "template_set_not_found";
    case Errc::duplicate_name: return "duplicate_name";
    case Errc::registry_corrupt: return "registry_corrupt";
    case Errc::unknown_project: return "unknown_project";
    case Errc::invalid_name: return "invalid_name";
    case Errc::invalid_manifest: return "invalid_manifest";
    case Errc::invalid_argument: return "invalid_argument";
    }
    return "unknown";
}

// Single exception type for all operational failures; the code survives the
// trip through the C API boundary as a spin_status.
class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace spinneret
