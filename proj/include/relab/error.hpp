#pragma once

#include <stdexcept>
#include <string>

namespace relab {

enum class Errc {
    EmptyInput = 1,
    BadArgument,
    BadColumn,
    BadLabel,
    BadData,
    TooLarge,
    NumericalFailure,
    Degenerate,
    IO,
    Internal,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace relab
