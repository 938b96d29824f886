#pragma once

#include <string>
#include <vector>

#include "magnus/oracle.hpp"

namespace magnus {

// Multiplication table of a finite group with designated generator images.
// table[a][b] is the index of a*b.
struct MulTable {
  int order = 0;
  std::vector<std::vector<int>> table;
  int identity = 0;
  std::vector<int> generators;

  // Throws ValidationError on a malformed table or non-group.
  void validate() const;
};

// S3 generated by a = (0 1 2) and b = (0 1): |a| = 3, |b| = 2.
MulTable symmetric_group_s3();
// Z/m generated by 1.
MulTable cyclic_group(int m);
// Direct product of cyclic groups, one generator per factor.
MulTable cyclic_product(const std::vector<int>& orders);

MulTable parse_mul_table(const std::string& json_text);
std::string mul_table_to_json(const MulTable& t);

OraclePtr make_finite_group(MulTable table);

}  // namespace magnus
