#ifndef LAB_ERRORS_HPP
#define LAB_ERRORS_HPP

#include <stdexcept>

namespace lab {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace lab

#endif
