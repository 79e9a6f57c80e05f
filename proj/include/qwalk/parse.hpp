#ifndef qwalk_parse_hpp
#define qwalk_parse_hpp

#include <string>

#include "qwalk/ratfunc.hpp"

namespace qwalk {

// parses expressions built from integers, t, x, y, u, lam, + - * / ^ and
// parentheses, e.g. "t*y^2 - y - t/y" or "(1+2*t)/(1+y)"
RatFunc parse_ratfunc(const std::string& text);

}

#endif
