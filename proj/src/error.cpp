#include "relab/error.hpp"

namespace relab {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::EmptyInput: return "EmptyInput";
        case Errc::BadArgument: return "BadArgument";
        case Errc::BadColumn: return "BadColumn";
        case Errc::BadLabel: return "BadLabel";
        case Errc::BadData: return "BadData";
        case Errc::TooLarge: return "TooLarge";
        case Errc::NumericalFailure: return "NumericalFailure";
        case Errc::Degenerate: return "Degenerate";
        case Errc::IO: return "IO";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace relab
