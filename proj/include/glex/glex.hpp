#pragma once

#include "glex/anaphora.hpp"
#include "glex/auth.hpp"
#include "glex/client.hpp"
#include "glex/config.hpp"
#include "glex/entry.hpp"
#include "glex/error.hpp"
#include "glex/french.hpp"
#include "glex/hierarchy.hpp"
#include "glex/http_server.hpp"
#include "glex/json_codec.hpp"
#include "glex/ldif.hpp"
#include "glex/lexicon.hpp"
#include "glex/persistence.hpp"
#include "glex/predicate.hpp"
#include "glex/pretty.hpp"
#include "glex/service.hpp"
#include "glex/xml.hpp"
