import scrapy


class {{spider_class}}(scrapy.Spider):
    name = "{{spider_name}}"
    allowed_domains = [{{allowed_domains}}]
    start_urls = [{{start_urls}}]

    def parse(self, response):
        pass
