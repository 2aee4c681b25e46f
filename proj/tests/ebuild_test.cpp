// Copyright 2026 The Pacloud Authors
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

#include <gtest/gtest.h>

#include "pacloud/deps/ebuild.hpp"
#include "pacloud/deps/portage_tree.hpp"
#include "support.hpp"

using namespace pacloud;

namespace {

const char* kNcurses = R"EB(# Copyright 1999-2018 Gentoo Foundation
# Distributed under the terms of the GNU General Public License v2

EAPI=6
inherit eutils flag-o-matic toolchain-funcs multilib-minimal

MY_PV=${PV:0:3}
)EB";

const char* kSimple = R"EB(# ncurses, trimmed
EAPI=6

inherit eutils toolchain-funcs

DESCRIPTION="console display library"
HOMEPAGE="https://www.gnu.org/software/ncurses/ http://dickey.his.com/ncurses/"
MY_P="${PN}-${PV}"
SRC_URI="mirror://gnu/ncurses/${MY_P}.tar.gz"

LICENSE="MIT"
SLOT="0/6"
IUSE="ada +cxx debug doc gpm minimal threads tinfo trace unicode"

DEPEND="gpm? ( sys-libs/gpm )
	kernel_AIX? ( app-arch/gzip )"
RDEPEND="${DEPEND}
	!<x11-terms/rxvt-unicode-9.06-r3"
)EB";

Error parse_failure(const std::string& text) {
  try {
    parse_ebuild(text, "pkg", "1.0");
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "accepted:\n" << text;
  return Error(Errc::invalid_argument, "");
}

}  // namespace

TEST(ParseEbuild, Description) {
  auto info = parse_ebuild("DESCRIPTION=\"console display library\"\n", "ncurses", "6.1-r2");
  EXPECT_EQ(info.description, "console display library");
  EXPECT_EQ(info.depend_raw, "");
  EXPECT_EQ(info.rdepend_raw, "");
}

TEST(ParseEbuild, ExpandsBuiltins) {
  auto info = parse_ebuild("MY_P=\"${PN}-${PV}\"\nA=\"$P\"\nB='${PN}'\nC=${MY_P}\n", "vim", "8.1");
  EXPECT_EQ(info.variables.at("MY_P"), "vim-8.1");
  EXPECT_EQ(info.variables.at("A"), "vim-8.1");
  EXPECT_EQ(info.variables.at("B"), "${PN}");  // single quotes are literal
  EXPECT_EQ(info.variables.at("C"), "vim-8.1");
}

TEST(ParseEbuild, IgnoresInheritEapiAndComments) {
  auto info = parse_ebuild("# comment\nEAPI=7\n\ninherit eutils\n  inherit flag-o-matic\nDESCRIPTION=\"x\"\n", "p", "1");
  EXPECT_EQ(info.description, "x");
}

TEST(ParseEbuild, MultiLineDependencies) {
  auto info = parse_ebuild(kSimple, "ncurses", "6.1-r2");
  EXPECT_EQ(info.description, "console display library");
  EXPECT_EQ(info.variables.at("SRC_URI"), "mirror://gnu/ncurses/ncurses-6.1-r2.tar.gz");
  EXPECT_EQ(info.depend_raw, "gpm? ( sys-libs/gpm )\n\tkernel_AIX? ( app-arch/gzip )");
  EXPECT_NE(info.rdepend_raw.find("gpm? ( sys-libs/gpm )"), std::string::npos);
  EXPECT_NE(info.rdepend_raw.find("!<x11-terms/rxvt-unicode-9.06-r3"), std::string::npos);
}

TEST(ParseEbuild, AppendAndUnknownVariables) {
  auto info = parse_ebuild("RDEPEND=\"cat/a\"\nRDEPEND+=\" cat/b ${NOPE}\"\n", "p", "1");
  EXPECT_EQ(info.rdepend_raw, "cat/a cat/b ");
}

TEST(ParseEbuild, RejectsShellConstructs) {
  auto e = parse_failure("DESCRIPTION=\"ok\"\n\nFOO=\"$(ls)\"\n");
  EXPECT_EQ(e.code(), Errc::unsupported_ebuild_construct);
  EXPECT_EQ(e.line(), 3u);

  e = parse_failure("FOO=`uname`\n");
  EXPECT_EQ(e.code(), Errc::unsupported_ebuild_construct);
  EXPECT_EQ(e.line(), 1u);

  e = parse_failure("A=1\nsrc_configure() {\n\teconf\n}\n");
  EXPECT_EQ(e.code(), Errc::unsupported_ebuild_construct);
  EXPECT_EQ(e.line(), 2u);

  e = parse_failure("if use gtk; then\nA=1\nfi\n");
  EXPECT_EQ(e.code(), Errc::unsupported_ebuild_construct);
  EXPECT_EQ(e.line(), 1u);

  e = parse_failure(kNcurses);
  EXPECT_EQ(e.code(), Errc::unsupported_ebuild_construct);
  EXPECT_EQ(e.line(), 7u);

  e = parse_failure("DESCRIPTION=\"never closed\n");
  EXPECT_EQ(e.code(), Errc::unsupported_ebuild_construct);
}

TEST(ParseEbuild, Deterministic) {
  EXPECT_EQ(parse_ebuild(kSimple, "ncurses", "6.1-r2").variables, parse_ebuild(kSimple, "ncurses", "6.1-r2").variables);
}

TEST(MetadataFromEbuilds, SingleVersion) {
  EbuildInfo info;
  info.description = "console display library";
  auto meta = metadata_from_ebuilds(PackageId("sys-libs", "ncurses"), {{parse_version("6.1-r2"), info}});
  ASSERT_EQ(meta.versions.size(), 1u);
  EXPECT_TRUE(meta.versions.at("6.1-r2").dependencies.empty());
  EXPECT_EQ(meta.name.str(), "sys-libs/ncurses");
}

TEST(MetadataFromEbuilds, DescriptionFromHighestVersion) {
  EbuildInfo old_info, new_info;
  old_info.description = "old";
  old_info.rdepend_raw = "sys-libs/gpm";
  new_info.description = "new";
  new_info.rdepend_raw = "gpm? ( >=sys-libs/gpm-1.20 ) dev-libs/a";
  auto meta = metadata_from_ebuilds(PackageId("sys-libs", "ncurses"),
                                    {{parse_version("6.1-r2"), new_info}, {parse_version("5.9-r101"), old_info}});
  EXPECT_EQ(meta.description, "new");
  EXPECT_EQ(meta.versions.at("5.9-r101").dependencies, std::vector<std::string>{"sys-libs/gpm"});
  EXPECT_EQ(meta.versions.at("6.1-r2").dependencies,
            (std::vector<std::string>{"gpm? ( >=sys-libs/gpm-1.20 )", "dev-libs/a"}));
}

TEST(MetadataFromEbuilds, Errors) {
  try {
    metadata_from_ebuilds(PackageId("a", "b"), {});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::empty_input);
  }
  try {
    metadata_from_ebuilds(PackageId("a", "b"), {{parse_version("1.0"), {}}, {parse_version("1.0"), {}}});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::duplicate_version);
  }
}

TEST(PortageTree, TranslatesTheSampleTree) {
  pacloud::testing::TempDir out;
  auto report = translate_portage_tree(std::filesystem::path(PACLOUD_SAMPLES_DIR) / "portage", out.path());
  EXPECT_EQ(report.categories, 4u);
  EXPECT_EQ(report.packages, 5u);
  EXPECT_EQ(report.ebuilds, 8u);
  EXPECT_TRUE(report.skipped.empty());
  EXPECT_EQ(fsutil::read_file(out / "manifest.txt"), "app-editors\napp-misc\nsys-libs\nx11-terms\n");

  auto docs = parse_category_document("sys-libs", *fsutil::read_file(out / "sys-libs.json"));
  const auto& ncurses = docs.at("ncurses");
  EXPECT_EQ(ncurses.description, "console display library");
  EXPECT_EQ(ncurses.known_versions().size(), 4u);
  EXPECT_EQ(ncurses.versions.at("6.1-r2").dependencies, std::vector<std::string>{"gpm? ( sys-libs/gpm )"});
}

TEST(PortageTree, UnreadableEbuildsAreReportedOrFatal) {
  pacloud::testing::TempDir tree;
  fsutil::write_file_atomic(tree / "app-misc/good/good-1.0.ebuild", "DESCRIPTION=\"fine\"\n");
  fsutil::write_file_atomic(tree / "app-misc/bad/bad-1.0.ebuild", "DESCRIPTION=\"$(date)\"\n");
  fsutil::write_file_atomic(tree / "app-misc/bad/oops-1.0.ebuild", "DESCRIPTION=\"x\"\n");
  fsutil::write_file_atomic(tree / "not a category/x/x-1.ebuild", "");

  TranslationReport report;
  auto categories = read_portage_tree(tree.path(), &report);
  ASSERT_EQ(categories.at("app-misc").size(), 1u);
  EXPECT_EQ(categories.at("app-misc")[0].name.str(), "app-misc/good");
  ASSERT_EQ(report.skipped.size(), 2u);
  EXPECT_NE(report.skipped[0].second.find("UnsupportedEbuildConstruct"), std::string::npos);

  EXPECT_THROW(read_portage_tree(tree.path()), Error);
  EXPECT_THROW(read_portage_tree(tree / "missing"), Error);
}
