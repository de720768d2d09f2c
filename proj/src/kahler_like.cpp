#include "gauduchon/kahler_like.hpp"

#include <algorithm>
#include <cmath>

namespace gauduchon {

double Obstructions::max_norm() const { return std::max({norm_O2, norm_O20, norm_O11}); }

Obstructions obstructions_ts(const ChernData& cd, const GammaTheta2& gt, double t, double s) {
  const int n = cd.n;
  const CurvatureBlocks cb = curvature_blocks_ts(cd, gt, t, s);
  Obstructions ob;
  ob.O2 = cb.Theta2;
  ob.O20 = cb.Theta1.part(2, 0);
  const FormMatrix mixed = cb.Theta1.part(1, 1);
  for (int j = 0; j < n; ++j) {
    Form acc(3);
    for (int i = 0; i < n; ++i) acc += wedge(Form::phi(i), mixed(i, j));
    ob.norm_O11 = std::max(ob.norm_O11, acc.max_norm());
    ob.O11.push_back(std::move(acc));
  }
  ob.norm_O2 = ob.O2.max_norm();
  ob.norm_O20 = ob.O20.max_norm();
  return ob;
}

Obstructions obstructions(const ChernData& cd, const ConnectionParams& params) {
  return obstructions_ts(cd, gamma_theta2(cd), params.t(), params.s());
}

KahlerLikeResult is_kahler_like(const ChernData& cd, const ConnectionParams& params, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const double residual = obstructions(cd, params).max_norm();
  return {residual < tol, residual};
}

namespace {

// Bit position of the coframe label dual to frame vector a of (e_1..e_n, ebar_1..ebar_n).
int label_bit(int a, int n) { return a < n ? a : kMaxDim + (a - n); }

Complex eval_two_form(const Form& f, int x, int y, int n) {
  if (x == y) return {};
  const int bx = label_bit(x, n), by = label_bit(y, n);
  const Monomial m = static_cast<Monomial>((Monomial{1} << bx) | (Monomial{1} << by));
  const Complex c = f.coefficient(m);
  return bx < by ? c : -c;
}

using Rank4 = std::vector<Complex>;

// out(p,...) = sum_x M(p,x) in(x,...), contracting the given slot.
Rank4 contract_slot(const Rank4& in, const Eigen::MatrixXcd& M, int N, int slot) {
  Rank4 out(in.size());
  std::size_t stride = 1;
  for (int k = 3; k > slot; --k) stride *= static_cast<std::size_t>(N);
  const std::size_t block = stride * static_cast<std::size_t>(N);
  for (std::size_t base = 0; base < in.size(); base += block)
    for (std::size_t inner = 0; inner < stride; ++inner)
      for (int p = 0; p < N; ++p) {
        Complex acc{};
        for (int x = 0; x < N; ++x) acc += M(p, x) * in[base + static_cast<std::size_t>(x) * stride + inner];
        out[base + static_cast<std::size_t>(p) * stride + inner] = acc;
      }
  return out;
}

}  // namespace

RealCurvatureCheck real_curvature_oracle(const ChernData& cd, const ConnectionParams& params, double tol) {
  const int n = cd.n;
  const int N = 2 * n;
  const FormMatrix theta = connection_blocks(cd, params).full;
  const FormMatrix omega = cd.d(theta) - wedge(theta, theta);

  auto at = [N](int a, int b, int c, int d) {
    return ((static_cast<std::size_t>(a) * N + b) * N + c) * N + d;
  };

  // R(E_x, E_y, E_a, E_b) = sum_c Omega_{ac}(E_x, E_y) <E_c, E_b>, where the complex-bilinear
  // metric pairs e_k with ebar_k.
  Rank4 complex_frame(static_cast<std::size_t>(N) * N * N * N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      const int c = b < n ? b + n : b - n;
      const Form& entry = omega(a, c);
      if (entry.is_zero()) continue;
      for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) complex_frame[at(x, y, a, b)] = eval_two_form(entry, x, y, n);
    }

  // Real frame X_{2k} = u_k = e_k + ebar_k, X_{2k+1} = v_k = i(e_k - ebar_k) = J u_k.
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
  const Complex i_unit{0.0, 1.0};
  for (int k = 0; k < n; ++k) {
    M(2 * k, k) = 1.0;
    M(2 * k, n + k) = 1.0;
    M(2 * k + 1, k) = i_unit;
    M(2 * k + 1, n + k) = -i_unit;
  }
  Rank4 R = complex_frame;
  for (int slot = 0; slot < 4; ++slot) R = contract_slot(R, M, N, slot);

  // J X_{2k} = X_{2k+1}, J X_{2k+1} = -X_{2k}.
  auto jpartner = [](int p) { return p % 2 == 0 ? p + 1 : p - 1; };
  auto jsign = [](int p) { return p % 2 == 0 ? 1.0 : -1.0; };

  RealCurvatureCheck out;
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      for (int z = 0; z < N; ++z)
        for (int w = 0; w < N; ++w) {
          const Complex v = R[at(x, y, z, w)];
          out.scale = std::max(out.scale, std::abs(v));
          out.imaginary = std::max(out.imaginary, std::abs(v.imag()));
          out.bianchi = std::max(out.bianchi, std::abs(v + R[at(y, z, x, w)] + R[at(z, x, y, w)]));
          const Complex jf = jsign(x) * jsign(y) * R[at(jpartner(x), jpartner(y), z, w)];
          const Complex jl = jsign(z) * jsign(w) * R[at(x, y, jpartner(z), jpartner(w))];
          out.j_first = std::max(out.j_first, std::abs(jf - v));
          out.j_last = std::max(out.j_last, std::abs(jl - v));
        }
  out.kahler_like = out.bianchi < tol && out.j_first < tol && out.j_last < tol;
  return out;
}

}  // namespace gauduchon
