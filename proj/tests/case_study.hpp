/*
 * Copyright 2026 The anoncert Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Published case-study constants, kept independent of the copies compiled
// into the library so a typo on either side shows up as a mismatch.

#ifndef ANONCERT_TESTS_CASE_STUDY_HPP_
#define ANONCERT_TESTS_CASE_STUDY_HPP_

namespace case_study {

// Shared original private key for both curves.
inline constexpr const char* kI =
    "5D98BD1F7985FC560A8963D6709AAC8B01017D02FB14B12CEF168C9662056874";

namespace brainpool {
inline constexpr const char* kIx =
    "719CE2A5F8D8174418C3B3AA2E9C4F0EE8AF17F3A9E02A0656E03C32EC05383A";
inline constexpr const char* kIy =
    "2E98CA241C58A4933AEE7D4A22394D27EFC1C64618686A00519CC5CB4DE1A93D";
// Printed value; it is not below n.
inline constexpr const char* kRraPrinted =
    "F407A78C2CFC8586AC1BA3199F7CBEF34F138894586B5992B61BB8B5A99C5EE7";
// kRraPrinted - n.
inline constexpr const char* kRra =
    "4A0C4FB08B0DDBCA6DB5988901F93181C2DA0DF0A309B29B25FDAA3312540840";
inline constexpr const char* kJ =
    "A7A50CD00493D820783EFC5F7293DE0CC3DB8AF39E1E63C8151436C9745970B4";
inline constexpr const char* kJx =
    "6814044C70048578E6B120480CBA0B81186054403CAE4C67F688F4074AEDF39B";
inline constexpr const char* kJy =
    "4969EBCD7400997FBEAF31481DBA738253052A2FF119FE178CF596EFA7AAE156";
inline constexpr const char* kRca =
    "474B007D2533DF88376824D4F784129F7BD7B01F1B3C7E69826912D4121A12DF";
inline constexpr const char* kK =
    "44F4B57187D90DEC714116A3CC94633AB379C06F03F93B3A075F3B1AEF2B2CEC";
inline constexpr const char* kKx =
    "80C6DE97A41127BAAFBC4F36E4E514514086A3E4B0F86F9729C52A8767616BF3";
inline constexpr const char* kKy =
    "5E333A1B7AC00E2C126C48C343A1A314D2853D4FBD559B9453C434C8C1CDE396";
}  // namespace brainpool

namespace secp {
inline constexpr const char* kIx =
    "490D13266EB3E12C28E44C345B345C431D9BFAB5B101D5E0144AB6ECF194D852";
inline constexpr const char* kIy =
    "ABC2D769EF6DE7373AD78082BEC46E455A84BAD6CDCDA8FC557438E9AB56ECDD";
inline constexpr const char* kRra =
    "F649BE0670CD1C8325BF4EE06963C680E25140702DBCBAAA3D59B30D6CF3C727";
inline constexpr const char* kJ =
    "53E27B26EA5318D83048B2B6D9FE730C266BC2C581B9CD5238B674E0D2960A4A";
inline constexpr const char* kJx =
    "78BF0F472CD984F8EA7A756A514118652B88224DD344D5D593E03F2AFBCC6FC6";
inline constexpr const char* kJy =
    "A4C43CFFC945A1576B290EC63DB8FB31C74EF44F02963C67EB884E025B1A442E";
inline constexpr const char* kRca =
    "A1754E3C913F9C98B1147DD142E66A3CBE59DD5B53B721C39B0A73BCE4EB1B32";
inline constexpr const char* kK =
    "F557C9637B92B570E15D30881CE4DD48E4C5A020D570EF15D3C0E89DB781257C";
inline constexpr const char* kKx =
    "6FDFDCE25F876BD4B23FBFBFC9E49872944F01926989B5A72A1FD84125FEB428";
inline constexpr const char* kKy =
    "8A108A7CBA97CF26FB9768A7599473F5F9AA27CD462280F41FCAC13FF1BA42E3";
}  // namespace secp

}  // namespace case_study

#endif  // ANONCERT_TESTS_CASE_STUDY_HPP_
