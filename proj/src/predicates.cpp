#include "mcov/predicates.hpp"

#include <cmath>

namespace mcov {
namespace {

// Semi-static error-bound coefficients for the determinant screens, in the
// style of the classic adaptive-precision predicates. epsilon is 2^-53 (half
// a double ulp); each bound certifies the sign whenever |det| exceeds it.
constexpr double kEps = 1.1102230246251565e-16;  // 2^-53
constexpr double kCcwBoundA = (3.0 + 16.0 * kEps) * kEps;
constexpr double kO3dBoundA = (7.0 + 56.0 * kEps) * kEps;
constexpr double kIccBoundA = (10.0 + 96.0 * kEps) * kEps;
constexpr double kIspBoundA = (16.0 + 224.0 * kEps) * kEps;

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
int sign_of(const Rat& v) { return sgn(v); }

// ---- double screens; return {sign, certain} ---------------------------------

struct Screened {
  int sign;
  bool certain;
};

Screened orient2d_screen(const double* pa, const double* pb, const double* pc) {
  double detleft = (pa[0] - pc[0]) * (pb[1] - pc[1]);
  double detright = (pa[1] - pc[1]) * (pb[0] - pc[0]);
  double det = detleft - detright;
  double detsum = std::fabs(detleft) + std::fabs(detright);
  double errbound = kCcwBoundA * detsum;
  if (det > errbound || -det > errbound) return {sign_of(det), true};
  return {sign_of(det), false};
}

Screened orient3d_screen(const double* pa, const double* pb, const double* pc, const double* pd) {
  double adx = pa[0] - pd[0], ady = pa[1] - pd[1], adz = pa[2] - pd[2];
  double bdx = pb[0] - pd[0], bdy = pb[1] - pd[1], bdz = pb[2] - pd[2];
  double cdx = pc[0] - pd[0], cdy = pc[1] - pd[1], cdz = pc[2] - pd[2];
  double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  double cdxady = cdx * ady, adxcdy = adx * cdy;
  double adxbdy = adx * bdy, bdxady = bdx * ady;
  double det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);
  double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * std::fabs(adz) +
                     (std::fabs(cdxady) + std::fabs(adxcdy)) * std::fabs(bdz) +
                     (std::fabs(adxbdy) + std::fabs(bdxady)) * std::fabs(cdz);
  double errbound = kO3dBoundA * permanent;
  if (det > errbound || -det > errbound) return {sign_of(det), true};
  return {sign_of(det), false};
}

Screened incircle_screen(const double* pa, const double* pb, const double* pc, const double* pd) {
  double adx = pa[0] - pd[0], ady = pa[1] - pd[1];
  double bdx = pb[0] - pd[0], bdy = pb[1] - pd[1];
  double cdx = pc[0] - pd[0], cdy = pc[1] - pd[1];
  double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  double cdxady = cdx * ady, adxcdy = adx * cdy;
  double adxbdy = adx * bdy, bdxady = bdx * ady;
  double alift = adx * adx + ady * ady;
  double blift = bdx * bdx + bdy * bdy;
  double clift = cdx * cdx + cdy * cdy;
  double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * alift +
                     (std::fabs(cdxady) + std::fabs(adxcdy)) * blift +
                     (std::fabs(adxbdy) + std::fabs(bdxady)) * clift;
  double errbound = kIccBoundA * permanent;
  if (det > errbound || -det > errbound) return {sign_of(det), true};
  return {sign_of(det), false};
}

Screened insphere_screen(const double* pa, const double* pb, const double* pc, const double* pd,
                         const double* pe) {
  double aex = pa[0] - pe[0], aey = pa[1] - pe[1], aez = pa[2] - pe[2];
  double bex = pb[0] - pe[0], bey = pb[1] - pe[1], bez = pb[2] - pe[2];
  double cex = pc[0] - pe[0], cey = pc[1] - pe[1], cez = pc[2] - pe[2];
  double dex = pd[0] - pe[0], dey = pd[1] - pe[1], dez = pd[2] - pe[2];

  double ab = aex * bey - bex * aey;
  double bc = bex * cey - cex * bey;
  double cd = cex * dey - dex * cey;
  double da = dex * aey - aex * dey;
  double ac = aex * cey - cex * aey;
  double bd = bex * dey - dex * bey;

  double abc = aez * bc - bez * ac + cez * ab;
  double bcd = bez * cd - cez * bd + dez * bc;
  double cda = cez * da + dez * ac + aez * cd;
  double dab = dez * ab + aez * bd + bez * da;

  double alift = aex * aex + aey * aey + aez * aez;
  double blift = bex * bex + bey * bey + bez * bez;
  double clift = cex * cex + cey * cey + cez * cez;
  double dlift = dex * dex + dey * dey + dez * dez;

  double det = (dlift * abc - clift * dab) + (blift * cda - alift * bcd);

  double aezplus = std::fabs(aez), bezplus = std::fabs(bez);
  double cezplus = std::fabs(cez), dezplus = std::fabs(dez);
  double aexbeyplus = std::fabs(aex * bey), bexaeyplus = std::fabs(bex * aey);
  double bexceyplus = std::fabs(bex * cey), cexbeyplus = std::fabs(cex * bey);
  double cexdeyplus = std::fabs(cex * dey), dexceyplus = std::fabs(dex * cey);
  double dexaeyplus = std::fabs(dex * aey), aexdeyplus = std::fabs(aex * dey);
  double aexceyplus = std::fabs(aex * cey), cexaeyplus = std::fabs(cex * aey);
  double bexdeyplus = std::fabs(bex * dey), dexbeyplus = std::fabs(dex * bey);
  double permanent = ((cexdeyplus + dexceyplus) * bezplus + (dexbeyplus + bexdeyplus) * cezplus +
                      (bexceyplus + cexbeyplus) * dezplus) *
                         alift +
                     ((dexaeyplus + aexdeyplus) * cezplus + (aexceyplus + cexaeyplus) * dezplus +
                      (cexdeyplus + dexceyplus) * aezplus) *
                         blift +
                     ((aexbeyplus + bexaeyplus) * dezplus + (bexdeyplus + dexbeyplus) * aezplus +
                      (dexaeyplus + aexdeyplus) * bezplus) *
                         clift +
                     ((bexceyplus + cexbeyplus) * aezplus + (cexaeyplus + aexceyplus) * bezplus +
                      (aexbeyplus + bexaeyplus) * cezplus) *
                         dlift;
  double errbound = kIspBoundA * permanent;
  if (det > errbound || -det > errbound) return {sign_of(det), true};
  return {sign_of(det), false};
}

// ---- exact rational evaluations of the same determinants --------------------

int orient2d_exact(const Point& pa, const Point& pb, const Point& pc) {
  Rat det = (pa[0] - pc[0]) * (pb[1] - pc[1]) - (pa[1] - pc[1]) * (pb[0] - pc[0]);
  return sign_of(det);
}

int orient3d_exact(const Point& pa, const Point& pb, const Point& pc, const Point& pd) {
  Rat adx = pa[0] - pd[0], ady = pa[1] - pd[1], adz = pa[2] - pd[2];
  Rat bdx = pb[0] - pd[0], bdy = pb[1] - pd[1], bdz = pb[2] - pd[2];
  Rat cdx = pc[0] - pd[0], cdy = pc[1] - pd[1], cdz = pc[2] - pd[2];
  Rat det = adz * (bdx * cdy - cdx * bdy) + bdz * (cdx * ady - adx * cdy) +
            cdz * (adx * bdy - bdx * ady);
  return sign_of(det);
}

int incircle_exact(const Point& pa, const Point& pb, const Point& pc, const Point& pd) {
  Rat adx = pa[0] - pd[0], ady = pa[1] - pd[1];
  Rat bdx = pb[0] - pd[0], bdy = pb[1] - pd[1];
  Rat cdx = pc[0] - pd[0], cdy = pc[1] - pd[1];
  Rat det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) +
            (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy) +
            (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
  return sign_of(det);
}

int insphere_exact(const Point& pa, const Point& pb, const Point& pc, const Point& pd,
                   const Point& pe) {
  Rat aex = pa[0] - pe[0], aey = pa[1] - pe[1], aez = pa[2] - pe[2];
  Rat bex = pb[0] - pe[0], bey = pb[1] - pe[1], bez = pb[2] - pe[2];
  Rat cex = pc[0] - pe[0], cey = pc[1] - pe[1], cez = pc[2] - pe[2];
  Rat dex = pd[0] - pe[0], dey = pd[1] - pe[1], dez = pd[2] - pe[2];
  Rat ab = aex * bey - bex * aey;
  Rat bc = bex * cey - cex * bey;
  Rat cd = cex * dey - dex * cey;
  Rat da = dex * aey - aex * dey;
  Rat ac = aex * cey - cex * aey;
  Rat bd = bex * dey - dex * bey;
  Rat abc = aez * bc - bez * ac + cez * ab;
  Rat bcd = bez * cd - cez * bd + dez * bc;
  Rat cda = cez * da + dez * ac + aez * cd;
  Rat dab = dez * ab + aez * bd + bez * da;
  Rat alift = aex * aex + aey * aey + aez * aez;
  Rat blift = bex * bex + bey * bey + bez * bez;
  Rat clift = cex * cex + cey * cey + cez * cez;
  Rat dlift = dex * dex + dey * dey + dez * dez;
  Rat det = (dlift * abc - clift * dab) + (blift * cda - alift * bcd);
  return sign_of(det);
}

}  // namespace

int orientation_sign(const PointCloud& cloud, const uint32_t* T) {
  switch (cloud.dim()) {
    case 1: {
      if (cloud.doubles_exact()) {
        double d = cloud.approx(T[1], 0) - cloud.approx(T[0], 0);
        // Exact doubles: subtraction of nearby values may round, but the
        // sign of a difference of exact doubles is itself exact.
        return sign_of(d);
      }
      return sign_of(Rat(cloud.site(T[1])[0] - cloud.site(T[0])[0]));
    }
    case 2: {
      if (cloud.doubles_exact()) {
        Screened s = orient2d_screen(cloud.approx_row(T[0]), cloud.approx_row(T[1]),
                                     cloud.approx_row(T[2]));
        if (s.certain) return s.sign;
      }
      return orient2d_exact(cloud.site(T[0]), cloud.site(T[1]), cloud.site(T[2]));
    }
    case 3: {
      if (cloud.doubles_exact()) {
        Screened s = orient3d_screen(cloud.approx_row(T[0]), cloud.approx_row(T[1]),
                                     cloud.approx_row(T[2]), cloud.approx_row(T[3]));
        if (s.certain) return s.sign;
      }
      return orient3d_exact(cloud.site(T[0]), cloud.site(T[1]), cloud.site(T[2]),
                            cloud.site(T[3]));
    }
    default:
      throw InternalError("orientation_sign: bad dimension");
  }
}

SphereSide circumsphere_side(const PointCloud& cloud, const uint32_t* T, int orient, uint32_t p) {
  MCOV_CHECK(orient != 0, "circumsphere_side requires affinely independent T");
  int s = 0;
  switch (cloud.dim()) {
    case 1: {
      // p inside the interval-sphere over {a,b} iff (p-a)(p-b) < 0.
      if (cloud.doubles_exact()) {
        double u = cloud.approx(p, 0) - cloud.approx(T[0], 0);
        double v = cloud.approx(p, 0) - cloud.approx(T[1], 0);
        double prod = u * v;
        double bound = 8.0 * kEps * std::fabs(u) * std::fabs(v);
        if (prod > bound) return SphereSide::outside;
        if (prod < -bound) return SphereSide::inside;
      }
      Rat u = cloud.site(p)[0] - cloud.site(T[0])[0];
      Rat v = cloud.site(p)[0] - cloud.site(T[1])[0];
      s = -sign_of(Rat(u * v));
      break;
    }
    case 2: {
      if (cloud.doubles_exact()) {
        Screened sc = incircle_screen(cloud.approx_row(T[0]), cloud.approx_row(T[1]),
                                      cloud.approx_row(T[2]), cloud.approx_row(p));
        if (sc.certain) {
          s = sc.sign * orient;
          break;
        }
      }
      s = incircle_exact(cloud.site(T[0]), cloud.site(T[1]), cloud.site(T[2]), cloud.site(p)) *
          orient;
      break;
    }
    case 3: {
      if (cloud.doubles_exact()) {
        Screened sc = insphere_screen(cloud.approx_row(T[0]), cloud.approx_row(T[1]),
                                      cloud.approx_row(T[2]), cloud.approx_row(T[3]),
                                      cloud.approx_row(p));
        if (sc.certain) {
          s = sc.sign * orient;
          break;
        }
      }
      s = insphere_exact(cloud.site(T[0]), cloud.site(T[1]), cloud.site(T[2]), cloud.site(T[3]),
                         cloud.site(p)) *
          orient;
      break;
    }
    default:
      throw InternalError("circumsphere_side: bad dimension");
  }
  if (s > 0) return SphereSide::inside;
  if (s < 0) return SphereSide::outside;
  return SphereSide::on;
}

}  // namespace mcov
