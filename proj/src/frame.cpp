#include "seldark/frame.hpp"

#include "seldark/errors.hpp"

namespace seldark {

RotatingFrame make_rotating_frame(double omega) {
  RotatingFrame f;
  f.omega = omega;
  f.u = RVector::Zero(4);
  f.u(0) = -omega;
  f.u(3) = omega;
  return f;
}

namespace {

constexpr int kPairs[4][2] = {{1, 0}, {2, 0}, {3, 2}, {3, 1}};

void require_two_level(const SystemSpec& spec, const char* what) {
  validate(spec);
  if (spec.levels != 2) throw ConfigError(std::string(what) + ": requires levels = 2");
}

} // namespace

CMatrix w_at(const DriveSplit& split, double t) {
  const cplx phase = std::polar(1.0, kTwoPi * 2.0 * split.omega * t);
  CMatrix w = CMatrix::Zero(4, 4);
  for (const auto& p : kPairs) {
    w(p[0], p[1]) = split.w_amplitude(p[0], p[1]) * phase;
    w(p[1], p[0]) = std::conj(w(p[0], p[1]));
  }
  return w;
}

RotatingFrameHamiltonian to_rotating_frame(const SystemSpec& spec, const DriveSpec& drive, const RotatingFrame& frame) {
  require_two_level(spec, "to_rotating_frame");
  const Eigensystem eig = exact_eigensystem(spec);
  const CMatrix x1 = eig.states.adjoint() * drive_operator(spec, 1) * eig.states;
  const CMatrix x2 = eig.states.adjoint() * drive_operator(spec, 2) * eig.states;

  RotatingFrameHamiltonian out;
  out.h0 = CMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) out.h0(k, k) = eig.energies(k) - frame.u(k);

  const cplx m1 = std::polar(0.5 * drive.a1, -drive.phi1), m2 = std::polar(0.5 * drive.a2, -drive.phi2);
  const cplx p1 = std::conj(m1), p2 = std::conj(m2);
  out.drive.omega = frame.omega;
  out.drive.v = CMatrix::Zero(4, 4);
  out.drive.w_amplitude = CMatrix::Zero(4, 4);
  for (const auto& p : kPairs) {
    const int k = p[0], l = p[1];
    out.drive.v(k, l) = m1 * x1(k, l) + m2 * x2(k, l);
    out.drive.v(l, k) = std::conj(out.drive.v(k, l));
    out.drive.w_amplitude(k, l) = p1 * x1(k, l) + p2 * x2(k, l);
  }
  return out;
}

CMatrix transform_to_rotating(const CMatrix& h_eig, const RotatingFrame& frame, double t) {
  CMatrix out = h_eig;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) out(k, l) *= std::polar(1.0, kTwoPi * (frame.u(k) - frame.u(l)) * t);
  for (int k = 0; k < 4; ++k) out(k, k) -= frame.u(k);
  return out;
}

CMatrix transform_to_lab(const CMatrix& h_rot, const RotatingFrame& frame, double t) {
  CMatrix out = h_rot;
  for (int k = 0; k < 4; ++k) out(k, k) += frame.u(k);
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) out(k, l) *= std::polar(1.0, -kTwoPi * (frame.u(k) - frame.u(l)) * t);
  return out;
}

GateFactors rwa_gate_decomposition(const SystemSpec& spec, const DriveSpec& drive, double t) {
  require_two_level(spec, "rwa_gate_decomposition");
  if (!(t > 0.0)) throw ConfigError("rwa_gate_decomposition: t must be > 0");
  const RotatingFrame frame = make_rotating_frame(drive.omega);
  const RotatingFrameHamiltonian rf = to_rotating_frame(spec, drive, frame);

  GateFactors g;
  g.phase = CMatrix::Zero(4, 4);
  g.larmor = CMatrix::Zero(4, 4);
  const Eigensystem eig = exact_eigensystem(spec);
  for (int k = 0; k < 4; ++k) {
    g.phase(k, k) = std::polar(1.0, -kTwoPi * rf.h0(k, k).real() * t);
    g.larmor(k, k) = std::polar(1.0, -kTwoPi * eig.energies(k) * t);
  }
  CMatrix coupling = CMatrix::Zero(4, 4);
  coupling(3, 2) = rf.drive.v(3, 2);
  coupling(2, 3) = std::conj(rf.drive.v(3, 2));
  g.flip = propagator(coupling, t);
  return g;
}

} // namespace seldark
