#pragma once

#include <stdexcept>
#include <string>

namespace shapefn {

/// Error raised by the library. The message is one of a small set of stable
/// codes ("degenerate polygon", "cg_divergence", "eig_divergence",
/// "shape_mismatch", "closed_form_only", "empty sweep", ...) optionally
/// followed by ": <detail>".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail = {})
        : std::runtime_error(detail.empty() ? code : code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace shapefn
