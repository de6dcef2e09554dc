#include "tww/caps.hpp"

#include <cstdlib>

namespace tww {

Caps apply_caps_spec(Caps base, const std::string& spec) {
    size_t pos = 0;
    while (pos < spec.size()) {
        size_t end = spec.find(',', pos);
        if (end == std::string::npos) end = spec.size();
        std::string item = spec.substr(pos, end - pos);
        pos = end + 1;
        if (item.empty()) continue;
        size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw UsageError("TWW_CAPS: expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq);
        long long value = 0;
        try {
            value = std::stoll(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw UsageError("TWW_CAPS: bad value in '" + item + "'");
        }
        if (value <= 0) throw UsageError("TWW_CAPS: value must be positive in '" + item + "'");
        if (key == "exact") base.exact_n = static_cast<int>(value);
        else if (key == "brute") base.brute_assignments = value;
        else if (key == "grid") base.grid_minor_n = static_cast<int>(value);
        else if (key == "mixed") base.mixed_minor_n = static_cast<int>(value);
        else if (key == "reduct") base.reduct_nodes = value;
        else throw UsageError("TWW_CAPS: unknown key '" + key + "'");
    }
    return base;
}

Caps caps_from_env() {
    Caps caps;
    const char* env = std::getenv("TWW_CAPS");
    if (env == nullptr) return caps;
    return apply_caps_spec(caps, env);
}

}  // namespace tww
