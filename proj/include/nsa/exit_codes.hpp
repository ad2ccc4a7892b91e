#pragma once

#include "nsa/errors.hpp"

#include <exception>

namespace nsa {

enum ExitCode : int {
    kExitOk = 0,
    kExitParse = 2,
    kExitDomain = 3,
    kExitUndecided = 4,
    kExitInvariant = 5,
};

/// Exit status for an exception escaping a command.
inline int exit_code_for(const std::exception_ptr& error) {
    try {
        std::rethrow_exception(error);
    } catch (const ParseError&) {
        return kExitParse;
    } catch (const DomainError&) {
        return kExitDomain;
    } catch (...) {
        return kExitInvariant;
    }
}

} // namespace nsa
