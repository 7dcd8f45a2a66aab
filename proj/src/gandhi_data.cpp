#include "scarcenet/dataset.hpp"

namespace scarcenet {

// Laboratory footing-load records (Gandhi, 2003). The literal below is the
// canonical CSV form; `dataset show` and `dataset export` emit it verbatim.
const char* embedded_gandhi_csv() {
  static const char* const kCsv = R"(B_m,D_m,L_over_B,gamma_kN_m3,phi_deg,qu_kPa
0.0585,0.029,5.95,15.7,34,58.5
0.0585,0.058,5.95,17.1,42.5,211
0.094,0.047,6,16.5,39.5,155.8
0.094,0.094,6,17.1,42.5,279.6
0.152,0.075,5.95,15.7,34,98.2
0.152,0.15,5.95,17.1,42.5,400.6
0.094,0.047,1,16.1,37,98.8
0.094,0.094,1,17.1,42.5,295.6
0.152,0.15,1,16.5,39.5,264.5
0.094,0.047,1,15.7,34,67.7
0.152,0.075,5.95,16.5,39.5,211.2
0.0585,0.058,5.95,16.5,39.5,142.9
0.152,0.15,1,17.1,42.5,423.6
0.152,0.075,1,15.7,34,91.2
0.094,0.047,6,16.1,37,104.8
0.0585,0.029,5.95,16.1,37,82.5
0.094,0.047,6,15.7,34,74.7
0.152,0.15,5.95,16.8,41.5,342.5
0.094,0.047,6,16.8,41.5,206.8
0.152,0.075,1,16.1,37,135.2
0.094,0.047,1,16.5,39.5,147.8
0.152,0.15,5.95,16.1,37,176.4
0.0585,0.029,5.95,16.8,41.5,157.5
0.152,0.075,1,16.8,41.5,276.3
0.094,0.094,1,16.8,41.5,253.6
0.0585,0.029,5.95,16.5,39.5,121.5
0.094,0.094,6,15.7,34,91.5
0.152,0.15,5.95,15.7,34,122.3
0.094,0.047,1,16.8,41.5,196.8
0.152,0.075,5.95,16.8,41.5,285.3
0.094,0.094,6,16.5,39.5,185.6
0.0585,0.058,5.95,16.8,41.5,184.9
0.094,0.094,1,15.7,34,90.5
0.152,0.15,1,15.7,34,124.4
0.152,0.15,1,16.8,41.5,361.5
0.0585,0.058,5.95,15.7,34,70.91
0.152,0.075,5.95,17.1,42.5,335.3
0.152,0.15,1,16.1,37,182.4
0.094,0.094,1,16.1,37,131.5
0.094,0.094,6,16.8,41.5,244.6
0.0585,0.029,5.95,17.1,42.5,180.5
0.094,0.047,6,17.1,42.5,235.6
0.152,0.15,5.95,16.5,39.5,254.5
0.094,0.094,1,16.5,39.5,191.6
0.152,0.075,1,16.5,39.5,201.2
0.0585,0.058,5.95,16.1,37,98.93
0.094,0.094,6,16.1,37,127.5
0.152,0.075,5.95,16.1,37,143.3
0.094,0.047,1,17.1,42.5,228.8
0.152,0.075,1,17.1,42.5,325.3
)";
  return kCsv;
}

}  // namespace scarcenet
