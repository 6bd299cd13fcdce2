// Copyright 2026 The Speechscore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "speechscore/synth.hpp"

namespace speechscore {

const std::vector<LexiconEntry>& bundled_lexicon() {
  static const std::vector<LexiconEntry> entries = {
      {"the", Pos::kDet, 1, 1.0, 1.0},
      {"a", Pos::kDet, 4, 1.0, 1.0},
      {"this", Pos::kDet, 7, 1.0, 1.0},
      {"that", Pos::kDet, 10, 1.0, 1.0},
      {"my", Pos::kDet, 13, 1.0, 1.0},
      {"our", Pos::kDet, 16, 1.0, 1.0},
      {"their", Pos::kDet, 19, 1.0, 1.0},
      {"some", Pos::kDet, 22, 1.0, 1.0},
      {"every", Pos::kDet, 25, 1.0, 1.0},
      {"i", Pos::kPron, 28, 1.0, 1.0},
      {"we", Pos::kPron, 31, 1.0, 1.0},
      {"they", Pos::kPron, 34, 1.0, 1.0},
      {"he", Pos::kPron, 37, 1.0, 1.0},
      {"she", Pos::kPron, 40, 1.0, 1.0},
      {"it", Pos::kPron, 43, 1.0, 1.0},
      {"you", Pos::kPron, 46, 1.0, 1.0},
      {"in", Pos::kPrep, 49, 1.0, 1.0},
      {"on", Pos::kPrep, 52, 1.0, 1.0},
      {"at", Pos::kPrep, 55, 1.0, 1.0},
      {"with", Pos::kPrep, 58, 1.0, 1.0},
      {"from", Pos::kPrep, 61, 1.0, 1.0},
      {"for", Pos::kPrep, 64, 1.0, 1.0},
      {"about", Pos::kPrep, 67, 1.0, 1.0},
      {"near", Pos::kPrep, 70, 1.0, 1.0},
      {"and", Pos::kConj, 73, 1.0, 1.0},
      {"but", Pos::kConj, 76, 1.0, 1.0},
      {"or", Pos::kConj, 79, 1.0, 1.0},
      {"so", Pos::kConj, 82, 1.0, 1.0},
      {"because", Pos::kConj, 85, 1.0, 1.0},
      {"although", Pos::kConj, 88, 1.0, 1.0},
      {"when", Pos::kConj, 91, 1.0, 1.0},
      {"while", Pos::kConj, 94, 1.0, 1.0},
      {"if", Pos::kConj, 97, 1.0, 1.0},
      {"was", Pos::kAux, 100, 1.0, 1.0},
      {"is", Pos::kAux, 103, 1.0, 1.0},
      {"had", Pos::kAux, 106, 1.0, 1.0},
      {"will", Pos::kAux, 109, 1.0, 1.0},
      {"can", Pos::kAux, 112, 1.0, 1.0},
      {"could", Pos::kAux, 115, 1.0, 1.0},
      {"would", Pos::kAux, 118, 1.0, 1.0},
      {"did", Pos::kAux, 121, 1.0, 1.0},
      {"time", Pos::kNoun, 596, 2.56, 3.0},
      {"day", Pos::kNoun, 1417, 1.77, 2.0},
      {"year", Pos::kNoun, 537, 1.97, 2.0},
      {"people", Pos::kNoun, 244, 2.64, 3.0},
      {"way", Pos::kNoun, 723, 2.03, 2.0},
      {"man", Pos::kNoun, 1838, 2.38, 2.0},
      {"woman", Pos::kNoun, 1419, 1.79, 2.0},
      {"child", Pos::kNoun, 557, 2.17, 2.0},
      {"world", Pos::kNoun, 1894, 2.94, 3.0},
      {"life", Pos::kNoun, 361, 2.01, 2.0},
      {"hand", Pos::kNoun, 1026, 1.46, 1.0},
      {"part", Pos::kNoun, 543, 2.03, 2.0},
      {"place", Pos::kNoun, 924, 2.24, 2.0},
      {"case", Pos::kNoun, 1058, 1.78, 2.0},
      {"week", Pos::kNoun, 1662, 2.42, 2.0},
      {"company", Pos::kNoun, 945, 2.45, 2.0},
      {"system", Pos::kNoun, 1261, 2.01, 2.0},
      {"program", Pos::kNoun, 336, 1.76, 2.0},
      {"question", Pos::kNoun, 1855, 2.55, 3.0},
      {"work", Pos::kNoun, 1787, 1.87, 2.0},
      {"government", Pos::kNoun, 923, 2.23, 2.0},
      {"number", Pos::kNoun, 1257, 1.97, 2.0},
      {"night", Pos::kNoun, 1723, 1.23, 1.0},
      {"point", Pos::kNoun, 737, 2.17, 2.0},
      {"home", Pos::kNoun, 1316, 2.56, 3.0},
      {"water", Pos::kNoun, 1077, 1.97, 2.0},
      {"room", Pos::kNoun, 747, 2.27, 2.0},
      {"mother", Pos::kNoun, 571, 2.31, 2.0},
      {"area", Pos::kNoun, 427, 2.67, 3.0},
      {"money", Pos::kNoun, 1849, 2.49, 2.0},
      {"story", Pos::kNoun, 410, 2.5, 2.0},
      {"fact", Pos::kNoun, 1282, 2.22, 2.0},
      {"month", Pos::kNoun, 1221, 1.61, 2.0},
      {"lot", Pos::kNoun, 1410, 1.7, 2.0},
      {"study", Pos::kNoun, 253, 2.73, 3.0},
      {"book", Pos::kNoun, 1132, 2.52, 3.0},
      {"eye", Pos::kNoun, 777, 2.57, 3.0},
      {"job", Pos::kNoun, 1014, 1.34, 1.0},
      {"word", Pos::kNoun, 218, 2.38, 2.0},
      {"business", Pos::kNoun, 1451, 2.11, 2.0},
      {"issue", Pos::kNoun, 874, 1.74, 2.0},
      {"side", Pos::kNoun, 423, 2.63, 3.0},
      {"kind", Pos::kNoun, 1676, 2.56, 3.0},
      {"head", Pos::kNoun, 1455, 2.15, 2.0},
      {"house", Pos::kNoun, 1202, 1.42, 1.0},
      {"service", Pos::kNoun, 1362, 1.22, 1.0},
      {"friend", Pos::kNoun, 1291, 2.31, 2.0},
      {"father", Pos::kNoun, 219, 2.39, 2.0},
      {"power", Pos::kNoun, 1465, 2.25, 2.0},
      {"hour", Pos::kNoun, 576, 2.36, 2.0},
      {"game", Pos::kNoun, 563, 2.23, 2.0},
      {"line", Pos::kNoun, 1019, 1.39, 1.0},
      {"end", Pos::kNoun, 284, 1.24, 1.0},
      {"member", Pos::kNoun, 1727, 1.27, 1.0},
      {"law", Pos::kNoun, 1673, 2.53, 3.0},
      {"car", Pos::kNoun, 1360, 1.2, 1.0},
      {"city", Pos::kNoun, 1247, 1.87, 2.0},
      {"community", Pos::kNoun, 893, 1.93, 2.0},
      {"name", Pos::kNoun, 723, 2.03, 2.0},
      {"president", Pos::kNoun, 1290, 2.3, 2.0},
      {"team", Pos::kNoun, 548, 2.08, 2.0},
      {"minute", Pos::kNoun, 1394, 1.54, 2.0},
      {"idea", Pos::kNoun, 1279, 2.19, 2.0},
      {"kid", Pos::kNoun, 1049, 1.69, 2.0},
      {"body", Pos::kNoun, 1252, 1.92, 2.0},
      {"information", Pos::kNoun, 1342, 2.82, 3.0},
      {"back", Pos::kNoun, 1882, 2.82, 3.0},
      {"parent", Pos::kNoun, 1138, 2.58, 3.0},
      {"face", Pos::kNoun, 947, 2.47, 2.0},
      {"others", Pos::kNoun, 1828, 2.28, 2.0},
      {"level", Pos::kNoun, 1464, 2.24, 2.0},
      {"office", Pos::kNoun, 420, 2.6, 3.0},
      {"door", Pos::kNoun, 1042, 1.62, 2.0},
      {"health", Pos::kNoun, 1462, 2.22, 2.0},
      {"person", Pos::kNoun, 1659, 2.39, 2.0},
      {"art", Pos::kNoun, 893, 1.93, 2.0},
      {"war", Pos::kNoun, 1640, 2.2, 2.0},
      {"history", Pos::kNoun, 1883, 2.83, 3.0},
      {"party", Pos::kNoun, 165, 1.85, 2.0},
      {"result", Pos::kNoun, 835, 1.35, 1.0},
      {"change", Pos::kNoun, 1054, 1.74, 2.0},
      {"morning", Pos::kNoun, 532, 1.92, 2.0},
      {"reason", Pos::kNoun, 810, 2.9, 3.0},
      {"research", Pos::kNoun, 1732, 1.32, 1.0},
      {"girl", Pos::kNoun, 658, 1.38, 1.0},
      {"guy", Pos::kNoun, 378, 2.18, 2.0},
      {"moment", Pos::kNoun, 555, 2.15, 2.0},
      {"air", Pos::kNoun, 1169, 2.89, 3.0},
      {"teacher", Pos::kNoun, 948, 2.48, 2.0},
      {"force", Pos::kNoun, 825, 1.25, 1.0},
      {"education", Pos::kNoun, 1005, 1.25, 1.0},
      {"food", Pos::kNoun, 1844, 2.44, 2.0},
      {"dog", Pos::kNoun, 955, 2.55, 3.0},
      {"cat", Pos::kNoun, 1807, 2.07, 2.0},
      {"school", Pos::kNoun, 1173, 2.93, 3.0},
      {"street", Pos::kNoun, 1499, 2.59, 3.0},
      {"market", Pos::kNoun, 1094, 2.14, 2.0},
      {"river", Pos::kNoun, 628, 2.88, 3.0},
      {"garden", Pos::kNoun, 1776, 1.76, 2.0},
      {"music", Pos::kNoun, 1148, 2.68, 3.0},
      {"family", Pos::kNoun, 310, 1.5, 2.0},
      {"village", Pos::kNoun, 212, 2.32, 2.0},
      {"library", Pos::kNoun, 1441, 2.01, 2.0},
      {"bus", Pos::kNoun, 1840, 2.4, 2.0},
      {"train", Pos::kNoun, 1768, 1.68, 2.0},
      {"weather", Pos::kNoun, 823, 1.23, 1.0},
      {"holiday", Pos::kNoun, 1167, 2.87, 3.0},
      {"doctor", Pos::kNoun, 1685, 2.65, 3.0},
      {"itinerary", Pos::kNoun, 13058, 5.58, 6.0},
      {"infrastructure", Pos::kNoun, 13216, 5.16, 5.0},
      {"dilemma", Pos::kNoun, 6877, 5.77, 6.0},
      {"paradigm", Pos::kNoun, 4153, 4.53, 5.0},
      {"ambiguity", Pos::kNoun, 3931, 4.31, 4.0},
      {"hypothesis", Pos::kNoun, 3214, 5.14, 5.0},
      {"metropolis", Pos::kNoun, 2981, 4.81, 5.0},
      {"pedagogy", Pos::kNoun, 9471, 5.71, 6.0},
      {"phenomenon", Pos::kNoun, 14833, 5.33, 5.0},
      {"reconciliation", Pos::kNoun, 10817, 5.17, 5.0},
      {"bureaucracy", Pos::kNoun, 15526, 4.26, 4.0},
      {"curriculum", Pos::kNoun, 7984, 4.84, 5.0},
      {"legislation", Pos::kNoun, 2456, 5.56, 6.0},
      {"negotiation", Pos::kNoun, 10722, 4.22, 4.0},
      {"perseverance", Pos::kNoun, 7265, 5.65, 6.0},
      {"apprenticeship", Pos::kNoun, 9707, 4.07, 4.0},
      {"archipelago", Pos::kNoun, 13132, 4.32, 4.0},
      {"biodiversity", Pos::kNoun, 3879, 5.79, 6.0},
      {"catastrophe", Pos::kNoun, 12230, 5.3, 5.0},
      {"sanctuary", Pos::kNoun, 10834, 5.34, 5.0},
      {"visited", Pos::kVerb, 1064, 1.84, 2.0},
      {"liked", Pos::kVerb, 1682, 2.62, 3.0},
      {"played", Pos::kVerb, 1692, 2.72, 3.0},
      {"watched", Pos::kVerb, 1411, 1.71, 2.0},
      {"helped", Pos::kVerb, 119, 1.39, 1.0},
      {"wanted", Pos::kVerb, 1763, 1.63, 2.0},
      {"needed", Pos::kVerb, 281, 1.21, 1.0},
      {"called", Pos::kVerb, 937, 2.37, 2.0},
      {"opened", Pos::kVerb, 1691, 2.71, 3.0},
      {"started", Pos::kVerb, 1073, 1.93, 2.0},
      {"moved", Pos::kVerb, 654, 1.34, 1.0},
      {"lived", Pos::kVerb, 1166, 2.86, 3.0},
      {"worked", Pos::kVerb, 1869, 2.69, 3.0},
      {"walked", Pos::kVerb, 638, 2.98, 3.0},
      {"talked", Pos::kVerb, 734, 2.14, 2.0},
      {"cooked", Pos::kVerb, 1046, 1.66, 2.0},
      {"cleaned", Pos::kVerb, 1215, 1.55, 2.0},
      {"learned", Pos::kVerb, 1668, 2.48, 2.0},
      {"studied", Pos::kVerb, 962, 2.62, 3.0},
      {"finished", Pos::kVerb, 1076, 1.96, 2.0},
      {"enjoyed", Pos::kVerb, 1033, 1.53, 2.0},
      {"stayed", Pos::kVerb, 157, 1.77, 2.0},
      {"travelled", Pos::kVerb, 1798, 1.98, 2.0},
      {"asked", Pos::kVerb, 958, 2.58, 3.0},
      {"answered", Pos::kVerb, 1801, 2.01, 2.0},
      {"carried", Pos::kVerb, 1768, 1.68, 2.0},
      {"elaborated", Pos::kVerb, 4562, 4.62, 5.0},
      {"scrutinized", Pos::kVerb, 11608, 5.08, 5.0},
      {"contemplated", Pos::kVerb, 8876, 5.76, 6.0},
      {"facilitated", Pos::kVerb, 14855, 5.55, 6.0},
      {"articulated", Pos::kVerb, 6944, 4.44, 4.0},
      {"reconciled", Pos::kVerb, 8137, 4.37, 4.0},
      {"deliberated", Pos::kVerb, 11220, 5.2, 5.0},
      {"cultivated", Pos::kVerb, 2289, 5.89, 6.0},
      {"speculated", Pos::kVerb, 7132, 4.32, 4.0},
      {"navigated", Pos::kVerb, 6601, 5.01, 5.0},
      {"good", Pos::kAdj, 1602, 1.82, 2.0},
      {"new", Pos::kAdj, 1098, 2.18, 2.0},
      {"big", Pos::kAdj, 193, 2.13, 2.0},
      {"small", Pos::kAdj, 1887, 2.87, 3.0},
      {"old", Pos::kAdj, 1587, 1.67, 2.0},
      {"great", Pos::kAdj, 1482, 2.42, 2.0},
      {"little", Pos::kAdj, 1703, 2.83, 3.0},
      {"long", Pos::kAdj, 277, 2.97, 3.0},
      {"young", Pos::kAdj, 1504, 2.64, 3.0},
      {"important", Pos::kAdj, 1623, 2.03, 2.0},
      {"large", Pos::kAdj, 934, 2.34, 2.0},
      {"different", Pos::kAdj, 1598, 1.78, 2.0},
      {"local", Pos::kAdj, 646, 1.26, 1.0},
      {"social", Pos::kAdj, 1621, 2.01, 2.0},
      {"early", Pos::kAdj, 1439, 1.99, 2.0},
      {"happy", Pos::kAdj, 1560, 1.4, 1.0},
      {"nice", Pos::kAdj, 281, 1.21, 1.0},
      {"beautiful", Pos::kAdj, 185, 2.05, 2.0},
      {"busy", Pos::kAdj, 1323, 2.63, 3.0},
      {"quiet", Pos::kAdj, 1011, 1.31, 1.0},
      {"easy", Pos::kAdj, 202, 2.22, 2.0},
      {"difficult", Pos::kAdj, 1845, 2.45, 2.0},
      {"warm", Pos::kAdj, 1092, 2.12, 2.0},
      {"cold", Pos::kAdj, 1888, 2.88, 3.0},
      {"friendly", Pos::kAdj, 1556, 1.36, 1.0},
      {"meticulous", Pos::kAdj, 13271, 5.71, 6.0},
      {"ubiquitous", Pos::kAdj, 16121, 4.21, 4.0},
      {"resilient", Pos::kAdj, 11382, 4.82, 5.0},
      {"ambiguous", Pos::kAdj, 10536, 4.36, 4.0},
      {"eloquent", Pos::kAdj, 7923, 4.23, 4.0},
      {"pragmatic", Pos::kAdj, 16760, 4.6, 5.0},
      {"intricate", Pos::kAdj, 3557, 4.57, 5.0},
      {"substantial", Pos::kAdj, 4226, 5.26, 5.0},
      {"vibrant", Pos::kAdj, 2133, 4.33, 4.0},
      {"comprehensive", Pos::kAdj, 12642, 5.42, 5.0},
      {"often", Pos::kAdv, 1276, 2.16, 2.0},
      {"really", Pos::kAdv, 533, 1.93, 2.0},
      {"very", Pos::kAdv, 1821, 2.21, 2.0},
      {"usually", Pos::kAdv, 1405, 1.65, 2.0},
      {"always", Pos::kAdv, 1435, 1.95, 2.0},
      {"sometimes", Pos::kAdv, 138, 1.58, 2.0},
      {"quickly", Pos::kAdv, 713, 1.93, 2.0},
      {"slowly", Pos::kAdv, 1319, 2.59, 3.0},
      {"together", Pos::kAdv, 505, 1.65, 2.0},
      {"finally", Pos::kAdv, 218, 2.38, 2.0},
      {"consequently", Pos::kAdv, 15735, 4.35, 4.0},
      {"meticulously", Pos::kAdv, 4729, 4.29, 4.0},
      {"predominantly", Pos::kAdv, 5632, 5.32, 5.0},
      {"invariably", Pos::kAdv, 5867, 5.67, 6.0},
  };
  return entries;
}

}  // namespace speechscore
