// Generated by tools/oracles/gen_constants.py. Do not edit.
#pragma once

#include <array>

namespace zladder::detail {

// Riemann-Siegel corrections C_k(p) as polynomials in y = (p - 1/2)^2:
// C_k = P_k(y) for even k, (p - 1/2) P_k(y) for odd k.
inline constexpr std::array<double, 22> kRsC0 = {
    3.8268343236508977173e-1,
    1.7489618723100817974,
    2.1180252076854963732,
    -8.7072166705114807392e-1,
    -3.4733112243465167073,
    -1.6626947308999324496,
    1.2167312889192321345,
    1.3014304161007975773,
    3.0511021827361672421e-2,
    -3.7558030515450952428e-1,
    -1.0857844165640659744e-1,
    5.1832902999549623376e-2,
    2.999948061990227592e-2,
    -2.275939670612564226e-3,
    -4.3826474165803383059e-3,
    -4.0642301837298469931e-4,
    4.0060977854221139279e-4,
    8.9710579913888412978e-5,
    -2.3025650027239107116e-5,
    -9.3800066019067924847e-6,
    6.3235149476091075042e-7,
    6.5510228192315016662e-7,
};

inline constexpr std::array<double, 23> kRsC1 = {
    -5.365020525675069406e-2,
    1.102781874108148244e-1,
    1.2317200154315226313,
    1.2634964862799457884,
    -1.6951089975595030184,
    -2.999871196765010089,
    -1.0819944959899208643e-1,
    1.9407662946212712688,
    7.8384235615006865329e-1,
    -5.0548296679003659188e-1,
    -3.8450723496057974051e-1,
    3.7472646465315320676e-2,
    9.0920266109731763173e-2,
    1.0449237550064509218e-2,
    -1.2582979651583416497e-2,
    -3.3995037211512740851e-3,
    1.0410950537714891268e-3,
    5.0109490511184868604e-4,
    -3.9563596690031815595e-5,
    -4.7624592453571896387e-5,
    -1.8539355338085132273e-6,
    3.193691808006897204e-6,
    4.0907807608506066327e-7,
};

inline constexpr std::array<double, 24> kRsC2 = {
    5.1885428302931684938e-3,
    1.2378633552253898413e-3,
    -1.8137505725166997411e-1,
    1.4291492748532126541e-1,
    1.3303391766687565325,
    3.5224723534037336775e-1,
    -2.4210015958919507238,
    -1.6760787022538108853,
    1.3689416723328372184,
    1.5539019430222983221,
    -1.722164273472998052e-1,
    -6.359068055045430989e-1,
    -9.9116498730412081054e-2,
    1.4033480067387008951e-1,
    4.7823520198272922364e-2,
    -1.7356040641479780798e-2,
    -1.0225012534028591844e-2,
    9.2741491597948878994e-4,
    1.3572194372373385345e-3,
    6.41369012029388009e-5,
    -1.2300805698196629883e-4,
    -1.8313507404789202555e-5,
    7.8216286043226273085e-6,
    2.0087542484759945503e-6,
};

inline constexpr std::array<double, 24> kRsC3 = {
    -2.6794321814389138085e-3,
    2.9953721091035149637e-2,
    -4.2570172541828697985e-2,
    -2.8997965779803887507e-1,
    4.8888319992354459725e-1,
    1.2308558763957460812,
    -8.2975607085274087042e-1,
    -2.2497635366665668665,
    7.8451399610054713794e-2,
    1.7467492800868894004,
    4.5968080979749935109e-1,
    -6.6193534710397749464e-1,
    -3.1590441036173634579e-1,
    1.2844792545207495989e-1,
    1.0073382716626152301e-1,
    -9.5301838488252677595e-3,
    -1.9264421687514088898e-2,
    -1.2464637158769291712e-3,
    2.424396964110308574e-3,
    4.3764769774185701828e-4,
    -2.0714032687001791276e-4,
    -6.2743445041865155605e-5,
    1.1575343814595669348e-5,
    5.8838549245403797839e-6,
};

inline constexpr std::array<double, 25> kRsC4 = {
    4.6483389361763381854e-4,
    -4.0226429461361883039e-3,
    3.8471770517961268836e-3,
    6.5811751358094860021e-2,
    -1.9604124343694449118e-1,
    -2.0854053686358853244e-1,
    9.5077541851417509458e-1,
    5.3415353129148739761e-1,
    -1.6763494411763400796,
    -1.0767471578751289928,
    1.2353393016565969853,
    1.0257825340057275772,
    -4.0124095793988544379e-1,
    -5.036663995108303448e-1,
    3.5734877955027449858e-2,
    1.4431763086785416624e-1,
    1.5091527417903469417e-2,
    -2.6098874779194361318e-2,
    -6.126628379519261749e-3,
    3.0775031298708411848e-3,
    1.1562478934088752316e-3,
    -2.2775966758472127473e-4,
    -1.4189637118181444433e-4,
    7.4648603079559194531e-6,
    1.2479701645409116617e-5,
};

// B_{2j} / (2j)! for j = 1..60 (index 0 holds j = 1).
inline constexpr std::array<double, 60> kBernoulliOverFactorial = {
    8.3333333333333333333e-2,
    -1.3888888888888888889e-3,
    3.3068783068783068783e-5,
    -8.2671957671957671958e-7,
    2.0876756987868098979e-8,
    -5.2841901386874931848e-10,
    1.3382536530684678833e-11,
    -3.3896802963225828668e-13,
    8.5860620562778445641e-15,
    -2.174868698558061873e-16,
    5.5090028283602295152e-18,
    -1.3954464685812523341e-19,
    3.5347070396294674717e-21,
    -8.9535174270375468504e-23,
    2.2679524523376830603e-24,
    -5.7447906688722024453e-26,
    1.4551724756148649019e-27,
    -3.6859949406653101782e-29,
    9.336734257095044672e-31,
    -2.3650224157006299346e-32,
    5.9906717624821343047e-34,
    -1.5174548844682902617e-35,
    3.8437581254541882322e-37,
    -9.7363530726466910353e-39,
    2.4662470442006809571e-40,
    -6.2470767418207436931e-42,
    1.5824030244644914298e-43,
    -4.0082736859489359685e-45,
    1.0153075855569556312e-46,
    -2.5718041582418717499e-48,
    6.5144560352338149316e-50,
    -1.6501309906896524555e-51,
    4.1798306285394758949e-53,
    -1.058763466770290877e-54,
    2.6818791912607706661e-56,
    -6.7932793511074212095e-58,
    1.7207577616681404905e-59,
    -4.3587303293488938434e-61,
    1.1040792903684666751e-62,
    -2.7966655133781345072e-64,
    7.0840365016794701985e-66,
    -1.7944074082892240666e-67,
    4.5452870636110961071e-69,
    -1.1513346631982051813e-70,
    2.9163647710923613547e-72,
    -7.3872382634973375626e-74,
    1.8712093117637953062e-75,
    -4.7398285577617994055e-77,
    1.200612599335450652e-78,
    -3.041187241514292383e-80,
    7.7034172747051062729e-82,
    -1.9512983909098830711e-83,
    4.9426965651594614749e-85,
    -1.2519996659171847922e-86,
    3.1713522017635154606e-88,
    -8.0331289707353344614e-90,
    2.0348153391661465708e-91,
    -5.1542474664474738591e-93,
    1.3055861352149467246e-94,
    -3.3070883141750912485e-96,
};

// Theta asymptotic coefficients (1 - 2^(1-2k)) |B_2k| / (4k(2k-1)), k = 1..16.
inline constexpr std::array<double, 16> kThetaSeries = {
    2.0833333333333333333e-2,
    1.2152777777777777778e-3,
    3.844246031746031746e-4,
    2.9529389880952380952e-4,
    4.2005339856902356902e-4,
    9.5829531254335941836e-4,
    3.2047369541266025641e-3,
    1.4774875890195759293e-2,
    8.9821500895519226285e-2,
    6.9621478052610795844e-1,
    6.7014288265923946952,
    7.8424132964114719891e+1,
    1.0965516339868803819e+3,
    1.8054385492346839438e+4,
    3.4573613378167279985e+5,
    7.619110766155783167e+6,
};

}  // namespace zladder::detail
