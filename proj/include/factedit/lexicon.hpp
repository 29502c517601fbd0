// Copyright 2026 The FactEdit Authors.
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

// Word lists consulted by the rule-based recognizer and the deletion editor.
// Entries are matched case-sensitively unless noted.

#pragma once

#include <algorithm>
#include <initializer_list>
#include <string_view>
#include <unordered_set>

namespace factedit::lexicon {

using WordSet = std::unordered_set<std::u32string_view>;

// Lowercase lookups.
inline const WordSet& Months() {
  static const WordSet kSet = {
      U"January", U"February", U"March",     U"April",   U"May",
      U"June",    U"July",     U"August",    U"September", U"October",
      U"November", U"December", U"Jan.",     U"Feb.",    U"Mar.",
      U"Apr.",    U"Jun.",     U"Jul.",      U"Aug.",    U"Sep.",
      U"Sept.",   U"Oct.",     U"Nov.",      U"Dec."};
  return kSet;
}

inline const WordSet& Weekdays() {
  static const WordSet kSet = {U"Monday",   U"Tuesday", U"Wednesday", U"Thursday",
                               U"Friday",   U"Saturday", U"Sunday"};
  return kSet;
}

inline const WordSet& NumberWords() {
  static const WordSet kSet = {
      U"two",      U"three",    U"four",     U"five",     U"six",
      U"seven",    U"eight",    U"nine",     U"ten",      U"eleven",
      U"twelve",   U"thirteen", U"fourteen", U"fifteen",  U"sixteen",
      U"seventeen", U"eighteen", U"nineteen", U"twenty",  U"thirty",
      U"forty",    U"fifty",    U"sixty",    U"seventy",  U"eighty",
      U"ninety",   U"dozen",    U"dozens"};
  return kSet;
}

inline const WordSet& ScaleWords() {
  static const WordSet kSet = {U"hundred", U"thousand", U"million", U"billion",
                               U"trillion", U"m", U"bn", U"k"};
  return kSet;
}

inline const WordSet& OrdinalWords() {
  static const WordSet kSet = {U"first", U"second", U"third",  U"fourth", U"fifth",
                               U"sixth", U"seventh", U"eighth", U"ninth",  U"tenth"};
  return kSet;
}

inline const WordSet& CurrencyWords() {
  static const WordSet kSet = {U"dollars", U"dollar", U"euros", U"euro", U"pounds",
                               U"cents",   U"pence",  U"yen",   U"yuan", U"rupees"};
  return kSet;
}

inline const WordSet& DateUnits() {
  static const WordSet kSet = {U"year",  U"years",  U"month",  U"months",
                               U"week",  U"weeks",  U"day",    U"days",
                               U"decade", U"decades", U"century", U"centuries"};
  return kSet;
}

inline const WordSet& TimeUnits() {
  static const WordSet kSet = {U"hour", U"hours", U"minute", U"minutes"};
  return kSet;
}

inline const WordSet& Meridiems() {
  static const WordSet kSet = {U"am", U"pm", U"a.m.", U"p.m.", U"GMT", U"BST",
                               U"UTC", U"ET", U"EST", U"CET"};
  return kSet;
}

// Capitalized words that never start an entity span.
inline const WordSet& StopCaps() {
  static const WordSet kSet = {
      U"The",    U"A",        U"An",       U"This",     U"That",    U"These",
      U"Those",  U"He",       U"She",      U"It",       U"They",    U"We",
      U"I",      U"You",      U"His",      U"Her",      U"Its",     U"Their",
      U"Our",    U"My",       U"Your",     U"In",       U"On",      U"At",
      U"By",     U"For",      U"From",     U"With",     U"As",      U"But",
      U"And",    U"Or",       U"If",       U"When",     U"While",   U"After",
      U"Before", U"Since",    U"Although", U"Though",   U"However", U"Meanwhile",
      U"There",  U"Here",     U"What",     U"Who",      U"Where",   U"Why",
      U"How",    U"Some",     U"Many",     U"Most",     U"All",     U"Both",
      U"Each",   U"Every",    U"Other",    U"Another",  U"According", U"During",
      U"Under",  U"Over",     U"About",    U"Despite",  U"Following", U"Yesterday",
      U"Today",  U"Tomorrow", U"Last",     U"Next",     U"One",     U"No",
      U"Not",    U"Now",      U"Then",     U"So",       U"Also",    U"Is",
      U"Was",    U"Are",      U"Were",     U"Will",     U"Would",   U"Can",
      U"Could",  U"Should",   U"May",      U"Did",      U"Do",      U"To",
      U"Of",     U"Up",       U"Out",      U"More",     U"Less"};
  return kSet;
}

inline const WordSet& Honorifics() {
  static const WordSet kSet = {
      U"Mr",     U"Mr.",       U"Mrs",      U"Mrs.",     U"Ms",      U"Ms.",
      U"Dr",     U"Dr.",       U"Prof",     U"Prof.",    U"Sir",     U"Dame",
      U"Lord",   U"Lady",      U"President", U"Senator", U"Sen.",    U"Judge",
      U"Justice", U"King",     U"Queen",    U"Prince",   U"Princess", U"Pope",
      U"Rev",    U"Rev.",      U"Captain",  U"Capt.",    U"General", U"Gen.",
      U"Col.",   U"Lt.",       U"Sgt.",     U"Chancellor", U"Minister", U"Governor",
      U"Gov.",   U"Mayor"};
  return kSet;
}

inline const WordSet& Connectors() {
  static const WordSet kSet = {U"of", U"de", U"del", U"da",  U"du", U"van",
                               U"von", U"der", U"den", U"la", U"le", U"al",
                               U"bin", U"&"};
  return kSet;
}

inline const WordSet& OrgSuffixes() {
  static const WordSet kSet = {
      U"Inc",       U"Inc.",       U"Corp",     U"Corp.",      U"Ltd",
      U"Ltd.",      U"Co.",        U"Company",  U"Corporation", U"Bank",
      U"University", U"College",   U"School",   U"Council",    U"Party",
      U"Ministry",  U"Department", U"Agency",   U"Association", U"Institute",
      U"Commission", U"Committee", U"Court",    U"Police",     U"Group",
      U"Club",      U"FC",         U"United",   U"Times",      U"News",
      U"Post",      U"Airlines",   U"Airways",  U"Foundation", U"Federation",
      U"Union",     U"Office",     U"Service",  U"Army",       U"Navy",
      U"Government", U"Parliament", U"Congress", U"Senate",    U"Assembly",
      U"Trust",     U"Society",    U"Board",    U"League",     U"Organisation",
      U"Organization", U"Authority", U"Hospital", U"Museum",   U"Network"};
  return kSet;
}

inline const WordSet& LocPrefixes() {
  static const WordSet kSet = {U"Mount", U"Mt.", U"Lake", U"Port", U"Fort",
                               U"Cape",  U"Gulf", U"Isle", U"Saint", U"St."};
  return kSet;
}

inline const WordSet& LocSuffixes() {
  static const WordSet kSet = {
      U"Street",  U"Road",   U"Avenue",  U"Square",   U"River",  U"Mountains",
      U"Island",  U"Islands", U"Sea",    U"Ocean",    U"Valley", U"County",
      U"Province", U"Bay",   U"Airport", U"Bridge",   U"Park",   U"Hill",
      U"Hills",   U"Coast",  U"Peninsula", U"Desert", U"Canal",  U"Strait",
      U"Forest",  U"Lane",   U"Region"};
  return kSet;
}

inline const WordSet& BuiltinLocations() {
  static const WordSet kSet = {
      U"Afghanistan", U"Albania", U"Algeria", U"Argentina", U"Armenia",
      U"Australia", U"Austria", U"Azerbaijan", U"Bahrain", U"Bangladesh",
      U"Belarus", U"Belgium", U"Bolivia", U"Bosnia", U"Brazil", U"Bulgaria",
      U"Cambodia", U"Cameroon", U"Canada", U"Chile", U"China", U"Colombia",
      U"Congo", U"Croatia", U"Cuba", U"Cyprus", U"Czech Republic", U"Denmark",
      U"Ecuador", U"Egypt", U"England", U"Eritrea", U"Estonia", U"Ethiopia",
      U"Finland", U"France", U"Georgia", U"Germany", U"Ghana", U"Greece",
      U"Guatemala", U"Haiti", U"Honduras", U"Hungary", U"Iceland", U"India",
      U"Indonesia", U"Iran", U"Iraq", U"Ireland", U"Israel", U"Italy",
      U"Jamaica", U"Japan", U"Jordan", U"Kazakhstan", U"Kenya", U"Kosovo",
      U"Kuwait", U"Latvia", U"Lebanon", U"Liberia", U"Libya", U"Lithuania",
      U"Luxembourg", U"Malaysia", U"Mali", U"Malta", U"Mexico", U"Moldova",
      U"Mongolia", U"Morocco", U"Mozambique", U"Myanmar", U"Nepal",
      U"Netherlands", U"New Zealand", U"Nicaragua", U"Niger", U"Nigeria",
      U"North Korea", U"Norway", U"Oman", U"Pakistan", U"Palestine", U"Panama",
      U"Paraguay", U"Peru", U"Philippines", U"Poland", U"Portugal", U"Qatar",
      U"Romania", U"Russia", U"Rwanda", U"Saudi Arabia", U"Scotland",
      U"Senegal", U"Serbia", U"Singapore", U"Slovakia", U"Slovenia",
      U"Somalia", U"South Africa", U"South Korea", U"South Sudan", U"Spain",
      U"Sri Lanka", U"Sudan", U"Sweden", U"Switzerland", U"Syria", U"Taiwan",
      U"Tanzania", U"Thailand", U"Tunisia", U"Turkey", U"Uganda", U"Ukraine",
      U"Uruguay", U"Uzbekistan", U"Venezuela", U"Vietnam", U"Wales", U"Yemen",
      U"Zambia", U"Zimbabwe", U"Britain", U"Great Britain", U"US", U"USA",
      U"UK", U"UAE", U"United States", U"United Kingdom", U"Europe", U"Asia",
      U"Africa", U"America", U"Antarctica", U"Middle East", U"London",
      U"Paris", U"Berlin", U"Madrid", U"Rome", U"Moscow", U"Beijing",
      U"Tokyo", U"Washington", U"New York", U"Los Angeles", U"Chicago",
      U"Hong Kong", U"Gaza", U"Jerusalem", U"Kabul", U"Baghdad", U"Damascus",
      U"Cairo", U"Delhi", U"Mumbai", U"Sydney", U"Toronto", U"Dublin",
      U"Edinburgh", U"Glasgow", U"Cardiff", U"Belfast", U"Manchester",
      U"Liverpool", U"Birmingham", U"Brussels", U"Geneva", U"Vienna",
      U"Athens", U"Istanbul", U"Kiev", U"Kyiv", U"Tehran", U"Lagos",
      U"Nairobi", U"Jakarta", U"Seoul", U"Shanghai", U"Singapore", U"Dubai"};
  return kSet;
}

inline const WordSet& BuiltinMisc() {
  static const WordSet kSet = {
      U"American", U"British", U"English", U"French", U"German", U"Russian",
      U"Chinese", U"Japanese", U"Czech", U"Syrian", U"Indonesian", U"Italian",
      U"Spanish", U"Irish", U"Scottish", U"Welsh", U"European", U"African",
      U"Asian", U"Muslim", U"Muslims", U"Christian", U"Christians", U"Jewish",
      U"Catholic", U"Israeli", U"Palestinian", U"Iranian", U"Iraqi", U"Afghan",
      U"Indian", U"Pakistani", U"Canadian", U"Australian", U"Mexican",
      U"Brazilian", U"Turkish", U"Greek", U"Dutch", U"Swedish", U"Norwegian",
      U"Polish", U"Ukrainian", U"Korean", U"Nigerian", U"Egyptian", U"Saudi",
      U"Republican", U"Republicans", U"Democrat", U"Democrats", U"Democratic",
      U"Conservative", U"Conservatives", U"Labour", U"Brexit", U"Olympics",
      U"Premier League", U"Christmas", U"Easter", U"Ramadan"};
  return kSet;
}

inline const WordSet& BuiltinOrganizations() {
  static const WordSet kSet = {
      U"BBC", U"UN", U"NATO", U"Nato", U"FBI", U"CIA", U"EU", U"IMF", U"WHO",
      U"Fifa", U"FIFA", U"Uefa", U"UEFA", U"Nasa", U"NASA", U"NHS", U"OPEC",
      U"Opec", U"Google", U"Apple", U"Microsoft", U"Amazon", U"Facebook",
      U"Twitter", U"Reuters", U"Congress", U"Parliament", U"Kremlin",
      U"Pentagon", U"Interpol", U"Unicef", U"Unesco", U"UNESCO", U"UNICEF"};
  return kSet;
}

// Function words the deletion editor may drop when a cut orphans them.
inline const WordSet& Articles() {
  static const WordSet kSet = {U"a", U"an", U"the"};
  return kSet;
}

inline const WordSet& Prepositions() {
  static const WordSet kSet = {
      U"about", U"above", U"across", U"after", U"against", U"along", U"among",
      U"around", U"as", U"at", U"before", U"behind", U"below", U"beneath",
      U"beside", U"between", U"beyond", U"by", U"despite", U"during",
      U"except", U"for", U"from", U"in", U"inside", U"into", U"near", U"of",
      U"off", U"on", U"onto", U"outside", U"over", U"per", U"since",
      U"through", U"throughout", U"to", U"toward", U"towards", U"under",
      U"until", U"upon", U"via", U"with", U"within", U"without", U"alongside"};
  return kSet;
}

inline const WordSet& Conjunctions() {
  static const WordSet kSet = {U"and", U"or", U"but", U"nor"};
  return kSet;
}

inline const WordSet& PossessiveMarkers() {
  static const WordSet kSet = {U"'s", U"'", U"’s", U"’"};
  return kSet;
}

// Determiners that introduce a rate or measure after a number ("$28 a barrel").
inline const WordSet& MeasureDeterminers() {
  static const WordSet kSet = {U"a", U"an", U"per", U"each"};
  return kSet;
}

inline bool Contains(const WordSet& set, std::u32string_view word) {
  return set.find(word) != set.end();
}

}  // namespace factedit::lexicon
