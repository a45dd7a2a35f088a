#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "asyncadd/equations.hpp"
#include "asyncadd/netlist.hpp"

namespace asyncadd {

/// Single dual-bit full adder.
///
/// Ports, least significant first:
///   homogeneous   in  A0=[A01,A00] A1=[A11,A10] B0 B1 CIN=[CIN1,CIN0]
///                 out SUM0=[SUM01,SUM00] SUM1=[SUM11,SUM10] COUT=[COUT1,COUT0]
///   heterogeneous in  A_d0=[A0..A3] B_d0=[B0..B3] CIN
///                 out SUM_d0=[SUM0..SUM3] COUT
///
/// Structure: first-level AND2 gates over A/B rails only; the four
/// carry-propagating operand products are ORed into P and joined with the
/// carry-in by C2(P, CINx), which is shared by the carry and sum networks.
/// The CIN-free carry products form G1/G0.
///   non-redundant: COUTx = OR2(Gx, C2(P, CINx))
///   redundant:     COUTx = AO21(OR2(P, Kx), CINx, Gx), Kx the two-operand
///                  extreme generate product (A11B11 / A10B10, A3B3 / A0B0)
Netlist gen_dbfa(DbfaVariant variant);

/// Emits one adder stage into `builder`. `inputs` are in dbfa_input_rails
/// order; `output_names` (6 entries, dbfa_output_rails order) name the
/// output nets. Internal nets are named with `prefix`. Returns the output
/// nets in dbfa_output_rails order.
std::vector<NetId> emit_dbfa(NetlistBuilder& builder, DbfaVariant variant,
                             std::span<const NetId> inputs, std::string_view prefix,
                             std::span<const std::string> output_names);

/// A DI codeword group: 2 rails (dual-rail) or 4 rails (1-of-4).
struct CodewordGroup {
  std::string name;
  std::vector<std::string> rails;
};

/// OR per codeword (an OR2 tree for 1-of-4 digits), joined by a balanced C2
/// tree into the single rail CD_OUT. Throws EmptyPortList.
Netlist gen_completion_detector(std::span<const CodewordGroup> groups);

/// Emits a completion detector over `groups` (rail nets per codeword).
NetId emit_completion_detector(NetlistBuilder& builder,
                               std::span<const std::vector<NetId>> groups,
                               std::string_view prefix, std::string output_name);

struct Converters {
  Netlist encoder;  // X=[X1,X0], Y=[Y1,Y0] -> E=[E0..E3], E_{2X+Y} = AND2(X rail, Y rail)
  Netlist decoder;  // E=[E0..E3] -> X=[X1,X0], Y=[Y1,Y0] via OR2
};
Converters gen_converters();

struct RcaConfig {
  int width = 2;
  DbfaVariant variant;
  bool include_converters = false;  // heterogeneous only
  bool include_completion_detector = false;

  /// Throws ConfigInvalid naming the problem.
  void validate() const;
};

/// width/2 cascaded stages; stage k's COUT feeds stage k+1's CIN.
/// Port naming: dual-rail bit k of operand X is group "X<k>" with rails
/// X<k>_1, X<k>_0; 1-of-4 digit j is group "X_d<j>" with rails
/// X_d<j>_E0..E3; carries are "CIN"/"COUT" with rails CIN1/CIN0 and
/// COUT1/COUT0; the completion detector output is group "CD" = [CD_OUT].
/// Heterogeneous adders with converters take and produce dual-rail words.
Netlist gen_rca(const RcaConfig& config);

struct AdderVector {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  bool cin = false;

  bool operator==(const AdderVector&) const = default;
};

/// A = 2^width - 1, B = 0, CIN = 1: every digit propagates, so the carry
/// ripples through all stages.
AdderVector worst_case_vector(int width);

}  // namespace asyncadd
