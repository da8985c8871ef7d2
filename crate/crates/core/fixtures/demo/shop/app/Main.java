package shop.app;

import shop.billing.Invoice;
import shop.billing.ParcelTracker;
import shop.catalog.Catalog;
import shop.shipping.Shipment;

public class Main {
    public static void main(String[] args) {
        Catalog catalog = new Catalog();
        catalog.add("lamp", 40);
        catalog.add("desk", 210);
        int price = catalog.priceOf("lamp");
        Invoice invoice = new Invoice();
        invoice.addLine(price, 2);
        Shipment shipment = new Shipment("Oslo");
        ParcelTracker tracker = new ParcelTracker();
        tracker.register(shipment);
        System.out.println(invoice.total() + " " + tracker.status(shipment));
    }
}
