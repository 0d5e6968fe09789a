#pragma once

#include <stdexcept>
#include <string>

namespace sds {

enum class Errc {
    ParseError,
    DuplicateAlternative,
    MissingAlternative,
    NotAdjacent,
    CapExceeded,
    DomainMismatch,
    ZeroTotalScore,
    BadWeights,
    ConfigOutOfRange,
    SizeBoundViolated,
    MissingProfile,
    SizeLimit,
    CaseCap,
    BudgetExceeded,
    InfeasibleSystem,
    BadInput,
    Internal,
};

struct Error : std::runtime_error {
    Errc code;
    int line = -1;  // 1-based, for parse errors
    int col = -1;

    Error(Errc c, const std::string& msg, int ln = -1, int co = -1)
        : std::runtime_error(msg), code(c), line(ln), col(co) {}
};

}  // namespace sds
