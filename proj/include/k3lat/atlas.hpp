#pragma once

#include "k3lat/lattice.hpp"

namespace k3lat {
namespace atlas {

// Basis conventions are frozen here; every explicit vector elsewhere in the
// library refers to these orderings.
//
//   U        (f, z) with f^2 = z^2 = 0, f.z = 1
//   U(n)     same basis, pairing n
//   <n>      rank one, generator of square n
//   A_n      chain a_1..a_n, a_i^2 = -2, a_i.a_{i+1} = 1
//   D_n      chain d_1..d_{n-1} plus d_n glued to d_{n-2}
//   E6       chain x_1..x_5 plus x_6 glued to x_3
//   E8       chain e_1..e_7 plus e_8 glued to e_3
//   N        Nikulin: (N_1..N_7, Nhat), Nhat = (N_1+..+N_8)/2
//   M        order-3 analogue: A_2^6 basis M_1^(j), M_2^(j) plus the glue
//            Mhat = sum_j (M_1^(j) + 2 M_2^(j))/3 replacing M_2^(6)
//   K12tilde rank 12 block matrix [E6(2) E6; E6 E6(2)]
//   K12      saturated complement of <F, S+T1+T2> in U+M
//   LambdaK3 (u^(1), u^(2), u^(3), e^(1), e^(2)), three U then two E8
//   Lambda_d     U + N + <-2d> on (F, S, N_1..N_7, Nhat, V)
//   Lambda_d_a   index-2 overlattice, d = 2 mod 4, glue (V+N_1+N_2)/2
//   Lambda_d_b   index-2 overlattice, d = 0 mod 4, glue (V+N_1+N_2+N_3+N_4)/2
//   Prime_2d_E82 (<2d>+E8(2))', d even
//   Prime_2d_N   (<2d>+N)', d even
//   TX_std   U+U+N on (t_1..t_12): t_1..t_7 orthogonal of square -2,
//            t_8^2 = -4 with t_8.t_i = -1, (t_9,t_10) and (t_11,t_12)
//            hyperbolic pairs
//   TX3_std  U + U(3) + A_2 + A_2 on (v_1,v_2,u_1,u_2,a_1,a_2,b_1,b_2)

enum class Family {
  U,
  Un,
  Diag,  // <n>
  An,
  Dn,
  E6,
  E6_2,
  E8,
  E8_2,
  N,
  M,
  K12tilde,
  K12,
  LambdaK3,
  Lambda_d,
  Lambda_d_a,
  Lambda_d_b,
  Prime_2d_E82,
  Prime_2d_N,
  UN,
  UM,
  TX_std,
  TX3_std,
};

struct NamedLatticeId {
  Family family;
  long n = 0;  // rank or scale parameter where applicable
  long d = 0;  // polarization parameter
};

IntegerLattice make(const NamedLatticeId& id);

// Overlattice families expose the exact glue vectors used by make.
struct GlueDescription {
  QMat glue;  // rows in the direct-sum basis of the family
  std::string note;
};
GlueDescription glue_description(const NamedLatticeId& id);
bool has_glue(const NamedLatticeId& id);

// "U", "U:2", "diag:-4", "A:3", "Lambda:6:a", "PrimeE8:4", "PrimeN:4", ...
NamedLatticeId parse_name(const std::string& name);
std::string family_name(Family f);
std::vector<std::string> known_names();

// Convenience constructors used throughout.
IntegerLattice U();
IntegerLattice U_scaled(long n);
IntegerLattice diag_lattice(const std::vector<long>& entries);
IntegerLattice A(int n);
IntegerLattice D(int n);
IntegerLattice E8();
IntegerLattice E8_scaled2();
IntegerLattice E6();
IntegerLattice nikulin();
IntegerLattice order3_M();
IntegerLattice lambda_k3();
IntegerLattice tx_std();
IntegerLattice tx3_std();

IntegerLattice scale(const IntegerLattice& l, long s, const std::string& name = "");

}  // namespace atlas
}  // namespace k3lat
