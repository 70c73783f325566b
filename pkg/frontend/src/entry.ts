import { boot } from "./main";

if (document.readyState === "loading") {
  document.addEventListener("DOMContentLoaded", () => boot(document));
} else {
  boot(document);
}
