#pragma once

// alpha_2, beta_2, gamma_2 for the general Weierstrass curve, transcribed
// term for term in the variables a1, a2, a3, a4, a6, x, y, z.

namespace doubling_reference {

inline constexpr const char* kAlpha2 =
    "2*x*y^3+3*a1*x^2*y^2+(a1^2-2*a2)*y^3*z+(a1^3-3*a1*a2+3*a3)*x*y^2*z+(-2*a1^2*a2+2*a2^2-6*a4)*x^2*y*z"
    "+(a1*a2^2-3*a2*a3-3*a1*a4)*y^2*z^2+(a1^2*a2^2-a1^3*a3-2*a1*a2*a3-4*a1^2*a4-3*a3^2+2*a2*a4-18*a6)*x*y*z^2"
    "+(-a1*a2^3+a1^2*a2*a3+a2^2*a3-3*a1*a3^2+4*a1*a2*a4-3*a3*a4-9*a1*a6)*x^2*z^2"
    "+(a1*a2^2*a3-a1^2*a3^2-3*a2*a3^2-a1*a3*a4-3*a1^2*a6+2*a4^2-6*a2*a6)*y*z^3"
    "+(-a1*a2*a3^2-a1*a2^2*a4+2*a1^2*a3*a4-a1^3*a6-2*a3^3+a2*a3*a4+4*a1*a4^2-3*a1*a2*a6-9*a3*a6)*x*z^3"
    "+(-a2*a3^3+a1*a3^2*a4-a1*a2^2*a6+a3*a4^2-3*a2*a3*a6+3*a1*a4*a6)*z^4";

inline constexpr const char* kBeta2 =
    "y^4+a1*x*y^3+(a1*a2-2*a3)*y^3*z+(a1^2*a2-a2^2-3*a1*a3+3*a4)*x*y^2*z+(-2*a1*a2^2+6*a1*a4)*x^2*y*z"
    "+(a2^3-a1*a2*a3+a1^2*a4-5*a2*a4+18*a6)*y^2*z^2+(a1*a2^3-2*a1^2*a2*a3+a1^3*a4-a2^2*a3+3*a1*a3^2-6*a1*a2*a4+3*a3*a4+27*a1*a6)*x*y*z^2"
    "+(-a2^4+2*a1*a2^2*a3-a1^2*a2*a4+6*a2^2*a4-6*a1*a3*a4+9*a1^2*a6-9*a4^2)*x^2*z^2"
    "+(a2^3*a3-a1*a2*a3^2+a1^3*a6+2*a3^3-5*a2*a3*a4-a1*a4^2+3*a1*a2*a6+18*a3*a6)*y*z^3"
    "+(a1^2*a2*a3^2-a1^3*a3*a4+a1^4*a6+2*a2^2*a3^2-a1*a3^3-a2^3*a4-2*a1^2*a4^2+6*a1^2*a2*a6-6*a3^2*a4+3*a2*a4^2+9*a2^2*a6-27*a4*a6)*x*z^3"
    "+(a1*a2*a3^3-a1^2*a3^2*a4+a1^3*a3*a6-a3^4+a2*a3^2*a4-2*a1*a3*a4^2-a2^3*a6+6*a1*a2*a3*a6-a4^3-9*a3^2*a6+9*a2*a4*a6-27*a6^2)*z^4";

inline constexpr const char* kGamma2 =
    "8*y^3*z+12*a1*x*y^2*z+6*a1^2*x^2*y*z+(a1^3+12*a3)*y^2*z^2+(a1^4+12*a1*a3)*x*y*z^2"
    "+(-a1^3*a2+3*a1^2*a3)*x^2*z^2+(a1^3*a3+6*a3^2)*y*z^3+(-a1^3*a4+3*a1*a3^2)*x*z^3"
    "+(-a1^3*a6+a3^3)*z^4";

}  // namespace doubling_reference
